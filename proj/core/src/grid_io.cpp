#include <bit>
#include <cstdint>
#include <fstream>

#include "heislac/grid.hpp"
#include "json.hpp"

static_assert(std::endian::native == std::endian::little, "grid snapshots assume a little-endian host");

namespace heislac {

namespace {

constexpr const char* kFormat = "heislac-grid-1";

template <class T>
const char* dtype_name() {
  return std::is_same_v<T, double> ? "float64" : "complex128";
}

template <class T>
void write_impl(const std::filesystem::path& path, const BasicGridFunction3<T>& f) {
  nlohmann::json h;
  h["format"] = kFormat;
  h["dtype"] = dtype_name<T>();
  const auto res = f.resolution();
  const auto box = f.box();
  h["resolution"] = {res[0], res[1], res[2]};
  h["box"] = {{"lo", box.lo}, {"hi", box.hi}};
  bool all_uniform = true;
  for (int a = 0; a < 3; ++a) all_uniform = all_uniform && f.axis(a).is_uniform();
  if (!all_uniform) h["edges"] = {f.axis(0).edges(), f.axis(1).edges(), f.axis(2).edges()};
  const std::string header = h.dump();

  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_grid: cannot open " + path.string());
  const std::uint64_t len = header.size();
  os.write(reinterpret_cast<const char*>(&len), sizeof len);
  os.write(header.data(), static_cast<std::streamsize>(header.size()));
  const auto data = f.samples();
  os.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size_bytes()));
  if (!os) throw std::runtime_error("write_grid: write failed for " + path.string());
}

template <class T>
BasicGridFunction3<T> read_impl(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_grid: cannot open " + path.string());
  std::uint64_t len = 0;
  is.read(reinterpret_cast<char*>(&len), sizeof len);
  if (!is || len == 0 || len > (1u << 26)) throw std::runtime_error("read_grid: bad header length");
  std::string header(len, '\0');
  is.read(header.data(), static_cast<std::streamsize>(len));
  if (!is) throw std::runtime_error("read_grid: truncated header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(header);
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error(std::string("read_grid: bad header: ") + e.what());
  }
  if (h.value("format", "") != kFormat) throw std::runtime_error("read_grid: unknown format");
  if (h.value("dtype", "") != dtype_name<T>())
    throw std::runtime_error("read_grid: dtype is " + h.value("dtype", std::string("?")));

  const auto res = h.at("resolution").get<std::array<std::size_t, 3>>();
  Axes3 axes;
  if (h.contains("edges")) {
    for (int a = 0; a < 3; ++a) axes[a] = Axis::from_edges(h["edges"][a].get<std::vector<double>>());
  } else {
    Box3 box;
    box.lo = h.at("box").at("lo").get<std::array<double, 3>>();
    box.hi = h.at("box").at("hi").get<std::array<double, 3>>();
    axes = uniform_axes(box, res);
  }
  for (int a = 0; a < 3; ++a)
    if (axes[a].size() != res[a]) throw std::runtime_error("read_grid: edges disagree with resolution");

  std::vector<T> data(res[0] * res[1] * res[2]);
  is.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(T)));
  if (!is) throw std::runtime_error("read_grid: truncated sample data");
  return BasicGridFunction3<T>(std::move(axes), std::move(data));
}

}  // namespace

void write_grid(const std::filesystem::path& path, const GridFunction3& f) { write_impl(path, f); }
void write_grid(const std::filesystem::path& path, const ComplexGridFunction3& f) { write_impl(path, f); }
GridFunction3 read_grid(const std::filesystem::path& path) { return read_impl<double>(path); }
ComplexGridFunction3 read_complex_grid(const std::filesystem::path& path) {
  return read_impl<std::complex<double>>(path);
}

}  // namespace heislac
