#include "vtorus/ensemble_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include "vtorus/error.hpp"
#include "vtorus/io.hpp"
#include "vtorus/serialize.hpp"

namespace vtorus {

namespace {

constexpr std::array<char, 8> kMagic{'V', 'T', 'O', 'R', 'U', 'S', 'E', 'N'};

void put_u64(std::ostream& os, std::uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint64_t get_u64(std::istream& is) {
  unsigned char b[8];
  if (!is.read(reinterpret_cast<char*>(b), 8)) throw InvalidArgument("ensemble file truncated");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

}  // namespace

void write_ensemble(const std::filesystem::path& path, const FieldEnsemble& e) {
  json header = {{"format", "vtorus-ensemble"},
                 {"version", 1},
                 {"kernel", e.kernel_id},
                 {"spectrum", e.spectrum},
                 {"scheme", std::string(scheme_name(e.scheme_id))},
                 {"scheme_id", e.scheme_id},
                 {"seed", e.config.seed},
                 {"config", to_json(e.config)},
                 {"index_set", to_json(e.index_set)},
                 {"first_path", e.first_path},
                 {"shape", {e.n_paths, e.n_times, e.n_slots}},
                 {"order", "path,time,slot"},
                 {"slots", "0: X_0; 1+2m: X^1 of member m; 2+2m: X^2 of member m"},
                 {"memory_horizons", e.memory_horizons},
                 {"byte_order", "little-endian float64"}};
  const std::string text = dump_json(header, -1);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw InvalidArgument("cannot open " + path.string() + " for writing");
  os.write(kMagic.data(), kMagic.size());
  put_u64(os, text.size());
  os.write(text.data(), static_cast<std::streamsize>(text.size()));
  for (double v : e.data) put_u64(os, std::bit_cast<std::uint64_t>(v));
  if (!os) throw InvalidArgument("write failed for " + path.string());
}

FieldEnsemble read_ensemble(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw InvalidArgument("cannot open ensemble file " + path.string());
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kMagic) {
    throw InvalidArgument(path.string() + " is not an ensemble file");
  }
  const std::uint64_t len = get_u64(is);
  if (len > (1ull << 30)) throw InvalidArgument("ensemble header too large");
  std::string text(len, '\0');
  if (!is.read(text.data(), static_cast<std::streamsize>(len))) {
    throw InvalidArgument("ensemble header truncated");
  }
  FieldEnsemble e;
  try {
    const auto h = json::parse(text);
    e.config = simulation_config_from_json(h.at("config"));
    e.kernel_id = h.at("kernel").get<std::string>();
    e.spectrum = h.at("spectrum").get<std::string>();
    e.scheme_id = h.at("scheme_id").get<std::uint32_t>();
    e.first_path = h.at("first_path").get<std::size_t>();
    const auto& shape = h.at("shape");
    e.n_paths = shape.at(0).get<std::size_t>();
    e.n_times = shape.at(1).get<std::size_t>();
    e.n_slots = shape.at(2).get<std::size_t>();
    e.memory_horizons = h.at("memory_horizons").get<std::vector<double>>();
    const auto& is_json = h.at("index_set");
    e.index_set = build_index_set(is_json.at("d").get<int>(), is_json.at("n_max").get<int>());
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidArgument(std::string("ensemble header: ") + ex.what());
  }
  if (e.n_slots != 1 + 2 * e.index_set.size()) throw InvalidArgument("ensemble slot count mismatch");
  e.data.resize(e.n_paths * e.n_times * e.n_slots);
  for (auto& v : e.data) v = std::bit_cast<double>(get_u64(is));
  return e;
}

}  // namespace vtorus
