#include "mpsched/instance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "mpsched/kernels.hpp"

namespace mpsched {

std::vector<std::vector<int>> Instance::machine_techs() const {
  std::vector<std::vector<int>> techs(num_machines);
  for (int u = 1; u <= num_technologies(); ++u) {
    for (int l : technologies[u - 1].machines) techs[l - 1].push_back(u);
  }
  return techs;
}

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument("invalid instance: " + what);
}

}  // namespace

void validate_instance(const Instance& inst) {
  const int k = inst.num_products();
  const int d = inst.num_technologies();
  const int m = inst.num_machines;
  if (k < 1) fail("no products");
  if (m < 1) fail("no machines");
  if (d < 1) fail("no technologies");

  std::vector<int> owner(d, 0);
  for (int i = 1; i <= k; ++i) {
    const Product& p = inst.products[i - 1];
    if (!(p.volume > 0.0) || !std::isfinite(p.volume))
      fail("product " + std::to_string(i) + " volume must be positive");
    if (p.technologies.empty())
      fail("product " + std::to_string(i) + " has no technologies");
    for (int u : p.technologies) {
      if (u < 1 || u > d)
        fail("product " + std::to_string(i) + " references technology " +
             std::to_string(u));
      if (owner[u - 1] != 0)
        fail("technology " + std::to_string(u) + " owned by two products");
      owner[u - 1] = i;
    }
  }
  for (int u = 1; u <= d; ++u) {
    const Technology& t = inst.technologies[u - 1];
    if (owner[u - 1] == 0)
      fail("technology " + std::to_string(u) + " not owned by any product");
    if (t.product != owner[u - 1])
      fail("technology " + std::to_string(u) + " product field mismatch");
    if (!(t.rate > 0.0) || !std::isfinite(t.rate))
      fail("technology " + std::to_string(u) + " rate must be positive");
    if (t.machines.empty())
      fail("technology " + std::to_string(u) + " has empty machine set");
    for (std::size_t j = 0; j < t.machines.size(); ++j) {
      const int l = t.machines[j];
      if (l < 1 || l > m)
        fail("technology " + std::to_string(u) + " machine out of range");
      if (j > 0 && t.machines[j] <= t.machines[j - 1])
        fail("technology " + std::to_string(u) +
             " machine set must be sorted without duplicates");
    }
  }

  if (static_cast<int>(inst.setups.size()) != m) fail("setups size != m");
  const auto machine_techs = inst.machine_techs();
  for (int l = 1; l <= m; ++l) {
    if (inst.setups[l - 1].size() != static_cast<std::size_t>(d) * d)
      fail("setup matrix for machine " + std::to_string(l) + " is not d x d");
    for (int u : machine_techs[l - 1]) {
      for (int q : machine_techs[l - 1]) {
        const double s = inst.setup(l, u, q);
        if (!std::isfinite(s) || s < 0.0)
          fail("setup s[" + std::to_string(l) + "][" + std::to_string(u) +
               "][" + std::to_string(q) + "] must be finite and >= 0");
        if (u == q && s != 0.0)
          fail("setup s[" + std::to_string(l) + "] diagonal must be zero");
      }
    }
  }
}

double compute_horizon(const Instance& inst) {
  double total = 0.0;
  for (const Product& p : inst.products) {
    double slowest = 0.0;
    for (int u : p.technologies)
      slowest = std::max(slowest, p.volume / inst.technologies[u - 1].rate);
    total += slowest;
  }
  double max_setup = 0.0;
  const auto machine_techs = inst.machine_techs();
  for (int l = 1; l <= inst.num_machines; ++l) {
    for (int u : machine_techs[l - 1])
      for (int q : machine_techs[l - 1])
        max_setup = std::max(max_setup, inst.setup(l, u, q));
  }
  return total + (inst.num_products() - 1) * max_setup;
}

bool check_triangle(const Instance& inst, double tol) {
  const auto machine_techs = inst.machine_techs();
  for (int l = 1; l <= inst.num_machines; ++l) {
    const auto& techs = machine_techs[l - 1];
    for (int u : techs)
      for (int q : techs)
        for (int p : techs)
          if (inst.setup(l, u, q) + inst.setup(l, q, p) <
              inst.setup(l, u, p) - tol)
            return false;
  }
  return true;
}

Instance metric_closure(const Instance& inst) {
  Instance out = inst;
  const auto machine_techs = inst.machine_techs();
  for (int l = 1; l <= inst.num_machines; ++l) {
    const auto& techs = machine_techs[l - 1];
    const std::size_t c = techs.size();
    if (c < 3) continue;  // no triple can violate the inequality

    // Floyd-Warshall on the dense K_l x K_l submatrix.
    std::vector<double> dist(c * c);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j)
        dist[i * c + j] = inst.setup(l, techs[i], techs[j]);
    for (std::size_t via = 0; via < c; ++via) {
      const double* row_via = &dist[via * c];
      for (std::size_t i = 0; i < c; ++i) {
        kernels::min_plus(dist[i * c + via], row_via, &dist[i * c], c);
      }
    }
    auto& matrix = out.setups[l - 1];
    const std::size_t d = inst.technologies.size();
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j)
        matrix[(techs[i] - 1) * d + (techs[j] - 1)] = dist[i * c + j];
  }
  return out;
}

namespace {

// Hand-rolled draws on top of mt19937_64 so that generated instances are
// identical across standard libraries (std::uniform_*_distribution is
// implementation-defined).
double uniform_real(std::mt19937_64& rng, double lo, double hi) {
  const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

int uniform_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

std::vector<int> sample_machines(std::mt19937_64& rng, int m, int count) {
  std::vector<int> ids(m);
  std::iota(ids.begin(), ids.end(), 1);
  for (int j = 0; j < count; ++j)
    std::swap(ids[j], ids[j + uniform_int(rng, 0, m - 1 - j)]);
  ids.resize(count);
  std::sort(ids.begin(), ids.end());
  return ids;
}

}  // namespace

Instance generate_instance(const GeneratorConfig& cfg) {
  if (cfg.k < 1 || cfg.m < 1 || cfg.u_max < 1 || cfg.n_max < 1)
    throw std::invalid_argument("generator counts must be >= 1");
  if (cfg.v_max < 1.0) throw std::invalid_argument("v_max must be >= 1");
  if (cfg.s_max < 0.0) throw std::invalid_argument("s_max must be >= 0");

  std::mt19937_64 rng(cfg.seed);
  Instance inst;
  inst.num_machines = cfg.m;

  for (int i = 1; i <= cfg.k; ++i) {
    Product product;
    const int techs = uniform_int(rng, 1, cfg.u_max);
    product.volume = uniform_real(rng, 1.0, cfg.v_max);
    for (int j = 0; j < techs; ++j) {
      Technology tech;
      tech.product = i;
      tech.rate = uniform_real(rng, 1.0, std::max(1.0, product.volume / 2.0));
      tech.machines = sample_machines(rng, cfg.m, uniform_int(rng, 1, cfg.m));
      inst.technologies.push_back(std::move(tech));
      product.technologies.push_back(static_cast<int>(inst.technologies.size()));
    }
    inst.products.push_back(std::move(product));
  }

  const std::size_t d = inst.technologies.size();
  inst.setups.assign(cfg.m, std::vector<double>(d * d, 0.0));
  const auto machine_techs = inst.machine_techs();
  for (int l = 1; l <= cfg.m; ++l) {
    for (int u : machine_techs[l - 1]) {
      for (int q : machine_techs[l - 1]) {
        if (u == q) continue;
        inst.setups[l - 1][(u - 1) * d + (q - 1)] =
            uniform_real(rng, 0.0, cfg.s_max);
      }
    }
  }

  if (cfg.triangle_mode == TriangleMode::metric_closure)
    inst = metric_closure(inst);
  validate_instance(inst);
  return inst;
}

}  // namespace mpsched
