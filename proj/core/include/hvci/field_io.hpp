#pragma once

#include <filesystem>
#include <string>

#include "hvci/spectral.hpp"

namespace hvci {

/// Field dump: <base>.bin holds little-endian f64 samples (C order, component-major for
/// vectors and tensors); <base>.json is the sidecar {grid_size, kind, time, metadata}.
void write_field(const std::filesystem::path& base, const ScalarField& f, double time,
                 const std::string& metadata_json = "{}");
void write_field(const std::filesystem::path& base, const VectorField& f, double time,
                 const std::string& metadata_json = "{}");
void write_field(const std::filesystem::path& base, const SymTensorField& f, double time,
                 const std::string& metadata_json = "{}");

/// Field loaded back from a dump, in whichever kind the sidecar declares.
struct LoadedField {
  std::string kind;
  double time = 0.0;
  int grid_size = 0;
  std::string metadata_json;
  ScalarField scalar;
  VectorField vector;
  SymTensorField tensor;
};

LoadedField read_field(const std::filesystem::path& base);

}  // namespace hvci
