#include "hvci/field_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace hvci {

namespace {

static_assert(std::endian::native == std::endian::little, "field dumps assume a little-endian host");

std::filesystem::path with_suffix(const std::filesystem::path& base, const char* suffix) {
  return std::filesystem::path(base.string() + suffix);
}

template <std::size_t K>
void write_components(const std::filesystem::path& base, const std::array<ScalarField, K>& comps, const char* kind,
                      double time, const std::string& metadata_json) {
  const int n = comps[0].n();
  if (base.has_parent_path()) std::filesystem::create_directories(base.parent_path());
  std::ofstream bin(with_suffix(base, ".bin"), std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open " + with_suffix(base, ".bin").string());
  for (const auto& c : comps) {
    const auto phys = c.resized(n).to_physical(n);
    bin.write(reinterpret_cast<const char*>(phys.data()), std::streamsize(phys.size() * sizeof(double)));
  }
  nlohmann::json side{{"grid_size", n}, {"kind", kind}, {"time", time}};
  side["metadata"] = nlohmann::json::parse(metadata_json.empty() ? "{}" : metadata_json);
  std::ofstream(with_suffix(base, ".json")) << side.dump(2) << '\n';
}

}  // namespace

void write_field(const std::filesystem::path& base, const ScalarField& f, double time,
                 const std::string& metadata_json) {
  write_components<1>(base, {f}, "scalar", time, metadata_json);
}

void write_field(const std::filesystem::path& base, const VectorField& f, double time,
                 const std::string& metadata_json) {
  write_components<3>(base, f.c, "vector", time, metadata_json);
}

void write_field(const std::filesystem::path& base, const SymTensorField& f, double time,
                 const std::string& metadata_json) {
  write_components<6>(base, f.c, "tensor", time, metadata_json);
}

LoadedField read_field(const std::filesystem::path& base) {
  std::ifstream side_in(with_suffix(base, ".json"));
  if (!side_in) throw std::runtime_error("missing sidecar " + with_suffix(base, ".json").string());
  const auto side = nlohmann::json::parse(side_in);
  LoadedField out;
  out.kind = side.at("kind").get<std::string>();
  out.grid_size = side.at("grid_size").get<int>();
  out.time = side.at("time").get<double>();
  out.metadata_json = side.value("metadata", nlohmann::json::object()).dump();
  const int n = out.grid_size;
  const std::size_t count = std::size_t(n) * n * n;
  const int comps = out.kind == "scalar" ? 1 : out.kind == "vector" ? 3 : out.kind == "tensor" ? 6 : 0;
  if (!comps) throw std::runtime_error("unknown field kind " + out.kind);
  std::ifstream bin(with_suffix(base, ".bin"), std::ios::binary);
  if (!bin) throw std::runtime_error("missing data " + with_suffix(base, ".bin").string());
  std::vector<double> buf(count);
  std::vector<ScalarField> fields;
  for (int c = 0; c < comps; ++c) {
    bin.read(reinterpret_cast<char*>(buf.data()), std::streamsize(count * sizeof(double)));
    if (!bin) throw std::runtime_error("truncated field data in " + with_suffix(base, ".bin").string());
    fields.push_back(ScalarField::from_physical(buf, n, n));
  }
  if (comps == 1) out.scalar = std::move(fields[0]);
  if (comps == 3) out.vector = VectorField(std::move(fields[0]), std::move(fields[1]), std::move(fields[2]));
  if (comps == 6)
    for (int s = 0; s < 6; ++s) out.tensor.c[s] = std::move(fields[s]);
  return out;
}

}  // namespace hvci
