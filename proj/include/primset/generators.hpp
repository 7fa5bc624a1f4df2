#ifndef PRIMSET_GENERATORS_HPP
#define PRIMSET_GENERATORS_HPP

#include <array>
#include <cstddef>
#include <istream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "primset/bool_matrix.hpp"
#include "primset/resource_limits.hpp"
#include "primset/semigroup.hpp"

namespace primset {

/// A 3-CNF formula: clauses are triples of nonzero literals, +v for x_v and
/// -v for its negation. Repeated literals and tautological clauses are legal.
struct CnfFormula {
  std::size_t num_vars = 0;
  std::vector<std::array<int, 3>> clauses;
};

inline bool clause_satisfied(const std::array<int, 3>& clause, const std::vector<bool>& assignment) {
  for (int lit : clause) {
    const auto v = static_cast<std::size_t>(lit > 0 ? lit : -lit);
    const bool value = assignment[v - 1];
    if ((lit > 0 && value) || (lit < 0 && !value)) {
      return true;
    }
  }
  return false;
}

inline bool formula_satisfied(const CnfFormula& f, const std::vector<bool>& assignment) {
  for (const auto& c : f.clauses) {
    if (!clause_satisfied(c, assignment)) {
      return false;
    }
  }
  return true;
}

/// Standard DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>`
/// header, zero-terminated clauses (line breaks allowed anywhere). Every
/// clause must have exactly three literals.
inline CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  bool have_header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> current;
  std::string line;
  std::size_t line_no = 0;

  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("dimacs: line " + std::to_string(line_no) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == 'c') {
      continue;
    }
    std::istringstream ls(line);
    if (line[0] == 'p') {
      if (have_header) {
        fail("duplicate header");
      }
      std::string p, fmt;
      long long vars = -1, clauses = -1;
      ls >> p >> fmt >> vars >> clauses;
      if (p != "p" || fmt != "cnf" || vars < 1 || clauses < 1 || !ls.eof()) {
        std::string rest;
        if (ls >> rest) {
          fail("trailing tokens in header");
        }
        if (p != "p" || fmt != "cnf" || vars < 1 || clauses < 1) {
          fail("malformed header, expected 'p cnf <vars> <clauses>'");
        }
      }
      f.num_vars = static_cast<std::size_t>(vars);
      declared_clauses = static_cast<std::size_t>(clauses);
      have_header = true;
      continue;
    }
    if (!have_header) {
      fail("clause before 'p cnf' header");
    }
    int lit;
    while (ls >> lit) {
      if (lit == 0) {
        if (current.size() != 3) {
          fail("clause width " + std::to_string(current.size()) + ", expected exactly 3");
        }
        f.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
        continue;
      }
      const auto v = static_cast<std::size_t>(lit > 0 ? lit : -lit);
      if (v < 1 || v > f.num_vars) {
        fail("variable " + std::to_string(v) + " out of range 1.." + std::to_string(f.num_vars));
      }
      if (current.size() == 3) {
        fail("clause width > 3");
      }
      current.push_back(lit);
    }
    if (!ls.eof()) {
      fail("unexpected token");
    }
  }
  if (!have_header) {
    throw std::invalid_argument("dimacs: missing 'p cnf' header");
  }
  if (!current.empty()) {
    throw std::invalid_argument("dimacs: unterminated clause at end of input");
  }
  if (f.clauses.size() != declared_clauses) {
    throw std::invalid_argument("dimacs: header declares " + std::to_string(declared_clauses) +
                                " clauses, found " + std::to_string(f.clauses.size()));
  }
  return f;
}

inline CnfFormula parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

/// Node numbering for the three clause-gadget graphs: node u first, then for
/// each clause i (ascending): u_1^i..u_n^i, l_2^i..l_n^i, f^i, s^i. The
/// aliases u_{n+1}^i = f^i and l_{n+1}^i = s^i make the edge rules uniform.
class GadgetLayout {
 public:
  GadgetLayout(std::size_t num_vars, std::size_t num_clauses)
      : n_(num_vars), k_(num_clauses) {}

  std::size_t num_vars() const { return n_; }
  std::size_t num_clauses() const { return k_; }
  std::size_t node_count() const { return 1 + k_ * (2 * n_ + 1); }

  std::size_t u() const { return 1; }

  std::size_t u_node(std::size_t clause, std::size_t j) const {
    check(clause, j, 1);
    return j <= n_ ? block_start(clause) + (j - 1) : f_node(clause);
  }

  std::size_t l_node(std::size_t clause, std::size_t j) const {
    check(clause, j, 2);
    return j <= n_ ? block_start(clause) + n_ + (j - 2) : s_node(clause);
  }

  std::size_t f_node(std::size_t clause) const { return block_start(clause) + 2 * n_ - 1; }
  std::size_t s_node(std::size_t clause) const { return block_start(clause) + 2 * n_; }

  /// All nodes bearing superscript `clause`.
  IndexSet clause_block(std::size_t clause) const {
    IndexSet b(node_count());
    const std::size_t start = block_start(clause);
    for (std::size_t v = start; v < start + 2 * n_ + 1; ++v) {
      b.insert(v);
    }
    return b;
  }

  std::string name(std::size_t node) const {
    if (node == 1) {
      return "u";
    }
    const std::size_t clause = (node - 2) / (2 * n_ + 1) + 1;
    const std::size_t off = (node - 2) % (2 * n_ + 1);
    const std::string sup = "^" + std::to_string(clause);
    if (off < n_) {
      return "u_" + std::to_string(off + 1) + sup;
    }
    if (off < 2 * n_ - 1) {
      return "l_" + std::to_string(off - n_ + 2) + sup;
    }
    return off == 2 * n_ - 1 ? "f" + sup : "s" + sup;
  }

 private:
  std::size_t block_start(std::size_t clause) const { return 2 + (clause - 1) * (2 * n_ + 1); }

  void check(std::size_t clause, std::size_t j, std::size_t j_min) const {
    if (clause < 1 || clause > k_ || j < j_min || j > n_ + 1) {
      throw std::out_of_range("GadgetLayout: node index out of range");
    }
  }

  std::size_t n_;
  std::size_t k_;
};

/// The three gadget graphs of the satisfiability reduction. In G1, setting
/// x_j = 1 satisfies clause i iff the clause contains literal +j; then
/// u_j^i -> l_{j+1}^i, else u_j^i -> u_{j+1}^i. G2 is the same for x_j = 0.
/// Both also carry the l-chains, f self-loops, s^i -> f^i and u -> u_1^i.
/// G3 leads from every f^i and s^i back to u and from s^i to its whole block.
inline std::pair<MatrixSet, GadgetLayout> sat_gadgets(const CnfFormula& f) {
  if (f.num_vars < 1 || f.clauses.empty()) {
    throw std::invalid_argument("sat_gadgets: formula needs at least one variable and clause");
  }
  const std::size_t n = f.num_vars;
  const std::size_t k = f.clauses.size();
  GadgetLayout layout(n, k);
  const std::size_t size = layout.node_count();

  BoolMatrix g1(size), g2(size), g3(size);

  auto contains_literal = [&](std::size_t clause, int lit) {
    for (int l : f.clauses[clause - 1]) {
      if (l == lit) {
        return true;
      }
    }
    return false;
  };

  for (std::size_t i = 1; i <= k; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const std::size_t from = layout.u_node(i, j);
      g1.set(from, contains_literal(i, static_cast<int>(j)) ? layout.l_node(i, j + 1)
                                                            : layout.u_node(i, j + 1));
      g2.set(from, contains_literal(i, -static_cast<int>(j)) ? layout.l_node(i, j + 1)
                                                             : layout.u_node(i, j + 1));
    }
    for (std::size_t j = 2; j <= n; ++j) {
      g1.set(layout.l_node(i, j), layout.l_node(i, j + 1));
      g2.set(layout.l_node(i, j), layout.l_node(i, j + 1));
    }
    g1.set(layout.f_node(i), layout.f_node(i));
    g2.set(layout.f_node(i), layout.f_node(i));
    g1.set(layout.s_node(i), layout.f_node(i));
    g2.set(layout.s_node(i), layout.f_node(i));
    g1.set(layout.u(), layout.u_node(i, 1));
    g2.set(layout.u(), layout.u_node(i, 1));

    g3.set(layout.f_node(i), layout.u());
    g3.set(layout.s_node(i), layout.u());
    layout.clause_block(i).for_each(
        [&](std::size_t v) { g3.set(layout.s_node(i), v); });
  }

  return {MatrixSet({std::move(g1), std::move(g2), std::move(g3)}), layout};
}

/// The positive word certifying a satisfying assignment: G1 repeated n+1
/// times, G3, G1, one graph per variable (G1 for 1, G2 for 0), G3. Length
/// 2n+4 over the alphabet {1,2,3}.
inline Word sat_witness_sequence(const CnfFormula& f, const std::vector<bool>& assignment) {
  if (assignment.size() != f.num_vars) {
    throw std::invalid_argument("sat_witness_sequence: assignment size mismatch");
  }
  if (!formula_satisfied(f, assignment)) {
    throw std::invalid_argument("sat_witness_sequence: assignment does not satisfy the formula");
  }
  Word w;
  w.reserve(2 * f.num_vars + 4);
  for (std::size_t r = 0; r < f.num_vars + 1; ++r) {
    w.push_back(1);
  }
  w.push_back(3);
  w.push_back(1);
  for (std::size_t v = 0; v < f.num_vars; ++v) {
    w.push_back(assignment[v] ? 1 : 2);
  }
  w.push_back(3);
  return w;
}

struct SatEquivalenceReport {
  bool satisfiable = false;
  std::optional<std::vector<bool>> assignment;
  bool primitive = false;
  std::optional<Word> witness;
  bool agree = false;
};

/// Brute-force satisfiability against exact primitivity of the gadget set.
inline SatEquivalenceReport sat_equivalence_check(const CnfFormula& f,
                                                  const ResourceLimits& limits = {}) {
  if (f.num_vars > 24) {
    throw limit_exceeded("brute-force assignment space too large (num_vars > 24)");
  }
  SatEquivalenceReport report;
  const std::size_t total = std::size_t{1} << f.num_vars;
  for (std::size_t bits = 0; bits < total; ++bits) {
    std::vector<bool> assignment(f.num_vars);
    for (std::size_t v = 0; v < f.num_vars; ++v) {
      assignment[v] = (bits >> v) & 1;
    }
    if (formula_satisfied(f, assignment)) {
      report.satisfiable = true;
      report.assignment = std::move(assignment);
      break;
    }
  }
  Verdict v = decide_primitive_exact(sat_gadgets(f).first, limits);
  report.primitive = v.primitive;
  report.witness = std::move(v.witness);
  report.agree = report.satisfiable == report.primitive;
  return report;
}

/// Four graphs on 1 + sum(lengths) nodes: node u plus one directed cycle per
/// length, laid out contiguously (first node = lowest index). G1 runs around
/// each cycle, G2 goes from each cycle's last node to its whole cycle and to
/// u, G3 from every node to u, G4 from u to each cycle's first node. Lengths
/// must be pairwise coprime; the shortest positive product then has length
/// exactly 2 + prod(lengths).
inline MatrixSet prime_cycle_set(const std::vector<std::size_t>& cycle_lengths) {
  if (cycle_lengths.empty()) {
    throw std::invalid_argument("prime_cycle_set: need at least one cycle");
  }
  for (std::size_t a = 0; a < cycle_lengths.size(); ++a) {
    if (cycle_lengths[a] < 2) {
      throw std::invalid_argument("prime_cycle_set: cycle lengths must be >= 2");
    }
    for (std::size_t b = a + 1; b < cycle_lengths.size(); ++b) {
      if (std::gcd(cycle_lengths[a], cycle_lengths[b]) != 1) {
        throw std::invalid_argument("prime_cycle_set: cycle lengths must be pairwise coprime");
      }
    }
  }
  std::size_t n = 1;
  for (std::size_t len : cycle_lengths) {
    n += len;
  }

  BoolMatrix g1(n), g2(n), g3(n), g4(n);
  std::size_t first = 2;
  for (std::size_t len : cycle_lengths) {
    const std::size_t last = first + len - 1;
    for (std::size_t v = first; v < last; ++v) {
      g1.set(v, v + 1);
    }
    g1.set(last, first);
    for (std::size_t v = first; v <= last; ++v) {
      g2.set(last, v);
    }
    g2.set(last, 1);
    g4.set(1, first);
    first = last + 1;
  }
  for (std::size_t v = 1; v <= n; ++v) {
    g3.set(v, 1);
  }
  return MatrixSet({std::move(g1), std::move(g2), std::move(g3), std::move(g4)});
}

inline std::size_t prime_cycle_predicted_length(const std::vector<std::size_t>& cycle_lengths) {
  prime_cycle_set(cycle_lengths);  // reuse validation
  std::size_t prod = 1;
  for (std::size_t len : cycle_lengths) {
    prod *= len;
  }
  return 2 + prod;
}

/// The two-matrix primitive family whose shortest positive product needs at
/// least n(n-1) factors: A_a = identity plus entry (n,1), A_b = the cyclic
/// shift. Right-multiplying by A_b rotates a row vector; A_a only copies
/// position n into position 1.
inline MatrixSet extremal_primitive_set(std::size_t n) {
  if (n < 2) {
    throw std::invalid_argument("extremal_primitive_set: need n >= 2");
  }
  BoolMatrix a = BoolMatrix::identity(n);
  a.set(n, 1);
  BoolMatrix b(n);
  for (std::size_t i = 1; i <= n; ++i) {
    b.set(i, i < n ? i + 1 : 1);
  }
  return MatrixSet({std::move(a), std::move(b)});
}

}  // namespace primset

#endif
