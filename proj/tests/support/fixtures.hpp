#pragma once

#include <cstdint>
#include <fstream>
#include <iterator>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "perseus/session.hpp"

namespace fixtures {

inline std::string path(const std::string& name) { return std::string(PERSEUS_FIXTURE_DIR) + "/" + name; }

inline std::vector<std::uint8_t> read(const std::string& name) {
  std::ifstream in(path(name), std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct Case {
  std::string name;
  std::size_t chunk_bytes = 0;
  perseus::PayloadMode mode = perseus::PayloadMode::Hex;
  perseus::SessionParams params;
};

// Parses manifest.txt, written by make_fixtures.py alongside the binaries.
inline std::vector<Case> manifest() {
  std::ifstream in(path("manifest.txt"));
  if (!in) throw std::runtime_error("missing fixture manifest");
  std::vector<Case> cases;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream fields(line);
    std::string name, mode, polys, pmatrix;
    std::size_t chunk = 0;
    int k = 0, n = 0, mem = 0, width = 0, proba = 0;
    unsigned bf = 0;
    perseus::NoiseKey key;
    fields >> name >> chunk >> mode >> k >> n >> mem >> width >> proba >> bf;
    for (auto& v : key.init) fields >> v;
    fields >> polys >> pmatrix;

    std::vector<perseus::Gf2Poly> ps;
    std::istringstream poly_list(polys);
    std::string coeffs;
    while (std::getline(poly_list, coeffs, ',')) {
      perseus::Gf2Poly p;
      for (std::size_t d = 0; d < coeffs.size(); ++d) {
        if (coeffs[d] == '1') p.set_coeff(static_cast<int>(d), true);
      }
      ps.push_back(p);
    }
    std::vector<std::uint8_t> pm;
    for (char c : pmatrix) pm.push_back(c == '1' ? 1 : 0);

    perseus::NoiseConfig noise;
    noise.bf = static_cast<std::uint16_t>(bf);
    noise.proba = proba;
    auto code = perseus::PuncturedCode::make(perseus::ConvCode::make(k, n, mem, std::move(ps)), width, std::move(pm));
    cases.push_back({name, chunk, mode == "binary" ? perseus::PayloadMode::Binary : perseus::PayloadMode::Hex,
                     perseus::SessionParams{std::move(code), key, noise}});
  }
  return cases;
}

}  // namespace fixtures
