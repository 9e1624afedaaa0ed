#include "leibenson/harness/datum.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <sstream>

#include "leibenson/errors.hpp"
#include "leibenson/oracles.hpp"

namespace leibenson::harness {

namespace {

struct Table {
  std::vector<double> r;
  std::vector<double> u;
};

std::shared_ptr<const Table> read_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open datum file '" + path.string() + "'");
  }
  auto table = std::make_shared<Table>();
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    double r = 0.0;
    double u = 0.0;
    if (!(fields >> r >> u)) {
      throw ConfigError("datum file '" + path.string() + "': malformed line '" + line + "'");
    }
    if (!table->r.empty() && !(r > table->r.back())) {
      throw ConfigError("datum file '" + path.string() + "': radii must be strictly increasing");
    }
    if (!(u >= 0.0) || !std::isfinite(u)) {
      throw ConfigError("datum file '" + path.string() + "': values must be finite and non-negative");
    }
    table->r.push_back(r);
    table->u.push_back(u);
  }
  if (table->r.size() < 2) {
    throw ConfigError("datum file '" + path.string() + "' needs at least two samples");
  }
  return table;
}

}  // namespace

RadialProfile datum_profile(const DatumSpec& spec, double m, double p, int N) {
  switch (spec.kind) {
    case DatumSpec::Kind::zero:
      return [](double) { return 0.0; };
    case DatumSpec::Kind::bump: {
      const double amplitude = spec.first;
      const double radius = spec.second;
      return [amplitude, radius](double r) {
        const double x = 1.0 - (r / radius) * (r / radius);
        return x > 0.0 ? amplitude * x * x * x : 0.0;
      };
    }
    case DatumSpec::Kind::barenblatt: {
      auto profile = std::make_shared<BarenblattProfile>(BarenblattSpec{m, p, N, spec.first, spec.second});
      const double t0 = spec.second;
      return [profile, t0](double r) { return profile->value(t0, r); };
    }
    case DatumSpec::Kind::file: {
      auto table = read_table(spec.path);
      return [table](double r) {
        const auto& rs = table->r;
        if (r < rs.front()) {
          return table->u.front();
        }
        if (r > rs.back()) {
          return 0.0;
        }
        const auto hi = static_cast<std::size_t>(std::upper_bound(rs.begin(), rs.end(), r) - rs.begin());
        if (hi >= rs.size()) {
          return table->u.back();
        }
        const std::size_t lo = hi - 1;
        const double w = (r - rs[lo]) / (rs[hi] - rs[lo]);
        return (1.0 - w) * table->u[lo] + w * table->u[hi];
      };
    }
  }
  throw ConfigError("unknown datum kind");
}

Field sample_datum(const RadialProfile& profile, const RadialGrid& grid) {
  Field u(grid.size());
  const auto r = grid.centers();
  std::transform(r.begin(), r.end(), u.begin(), profile);
  return u;
}

}  // namespace leibenson::harness
