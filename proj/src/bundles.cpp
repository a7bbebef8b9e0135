#include "pnpn/bundles.hpp"

#include <nlohmann/json.hpp>

namespace pnpn::bundles {

using chow::BundleClassData;
using chow::ChowClass;

ExprPtr line_bundle(long long a, long long b) {
  auto e = std::make_shared<BundleExpr>();
  e->kind = NodeKind::LineBundle;
  e->p1 = a;
  e->p2 = b;
  return e;
}
ExprPtr pullback_qh() {
  auto e = std::make_shared<BundleExpr>();
  e->kind = NodeKind::PullbackQh;
  return e;
}
ExprPtr pullback_ql() {
  auto e = std::make_shared<BundleExpr>();
  e->kind = NodeKind::PullbackQL;
  return e;
}
ExprPtr frobenius(long long a, ExprPtr child) {
  auto e = std::make_shared<BundleExpr>();
  e->kind = NodeKind::Frobenius;
  e->p1 = a;
  e->children.push_back(std::move(child));
  return e;
}
ExprPtr dual(ExprPtr child) {
  auto e = std::make_shared<BundleExpr>();
  e->kind = NodeKind::Dual;
  e->children.push_back(std::move(child));
  return e;
}
ExprPtr tensor(std::vector<ExprPtr> children) {
  auto e = std::make_shared<BundleExpr>();
  e->kind = NodeKind::Tensor;
  e->children = std::move(children);
  return e;
}
ExprPtr direct_sum(std::vector<ExprPtr> children) {
  auto e = std::make_shared<BundleExpr>();
  e->kind = NodeKind::DirectSum;
  e->children = std::move(children);
  return e;
}
ExprPtr wedge(long long k, ExprPtr child) {
  auto e = std::make_shared<BundleExpr>();
  e->kind = NodeKind::Wedge;
  e->p1 = k;
  e->children.push_back(std::move(child));
  return e;
}
ExprPtr sym(long long k, ExprPtr child) {
  auto e = std::make_shared<BundleExpr>();
  e->kind = NodeKind::Sym;
  e->p1 = k;
  e->children.push_back(std::move(child));
  return e;
}
ExprPtr e0_kernel(long long n, long long q, long long k) {
  auto e = std::make_shared<BundleExpr>();
  e->kind = NodeKind::E0;
  e->p1 = n;
  e->p2 = q;
  e->p3 = k;
  return e;
}

BundleClassData eval_expr(const BundleExpr& e, int n, long p) {
  switch (e.kind) {
    case NodeKind::LineBundle:
      return {1, ChowClass::one(n) + ChowClass::divisor(n, Int(e.p1), Int(e.p2))};
    case NodeKind::PullbackQh: {
      // Euler sequence: c(Q_h) = 1 / (1 - h).
      ChowClass d = ChowClass::one(n) - ChowClass::divisor(n, 0, 1);
      return {n, inv_unit(d)};
    }
    case NodeKind::PullbackQL: {
      ChowClass d = ChowClass::one(n) - ChowClass::divisor(n, 1, 0);
      return {n, inv_unit(d)};
    }
    case NodeKind::Frobenius: {
      BundleClassData c = eval_expr(*e.children.at(0), n, p);
      long q = 1;
      for (long long i = 0; i < e.p1; ++i) q *= p;
      return {c.rank, chow::frobenius_pull_chern(c.total, q)};
    }
    case NodeKind::Dual: {
      BundleClassData c = eval_expr(*e.children.at(0), n, p);
      return {c.rank, chow::dual_chern(c.rank, c.total)};
    }
    case NodeKind::Tensor: {
      if (e.children.empty())
        return {1, ChowClass::one(n)};
      BundleClassData acc = eval_expr(*e.children[0], n, p);
      for (size_t i = 1; i < e.children.size(); ++i) {
        BundleClassData b = eval_expr(*e.children[i], n, p);
        if (b.rank == 1) {
          acc = {acc.rank, chow::twist_chern(acc.rank, acc.total, b.total.at(1, 0),
                                             b.total.at(0, 1))};
        } else if (acc.rank == 1) {
          Int a10 = acc.total.at(1, 0), a01 = acc.total.at(0, 1);
          acc = {b.rank, chow::twist_chern(b.rank, b.total, a10, a01)};
        } else {
          acc = chow::tensor_chern(acc, b);
        }
      }
      return acc;
    }
    case NodeKind::DirectSum: {
      BundleClassData acc{0, ChowClass::one(n)};
      for (const auto& ch : e.children) {
        BundleClassData b = eval_expr(*ch, n, p);
        acc.rank += b.rank;
        acc.total = acc.total * b.total;
      }
      return acc;
    }
    case NodeKind::Wedge: {
      BundleClassData c = eval_expr(*e.children.at(0), n, p);
      return chow::wedge_sym_chern(c.rank, c.total, e.p1, chow::PowerKind::Wedge);
    }
    case NodeKind::Sym: {
      BundleClassData c = eval_expr(*e.children.at(0), n, p);
      return chow::wedge_sym_chern(c.rank, c.total, e.p1, chow::PowerKind::Sym);
    }
    case NodeKind::E0: {
      if ((int)e.p1 != n)
        throw dimension_mismatch("eval_expr: E0 node dimension differs from ambient");
      return chow::chern_E0_symbolic((int)e.p1, (long)e.p2, (long)e.p3);
    }
  }
  throw std::invalid_argument("eval_expr: unknown node kind");
}

namespace {

const char* kind_name(NodeKind k) {
  switch (k) {
    case NodeKind::LineBundle: return "LineBundle";
    case NodeKind::PullbackQh: return "PullbackQh";
    case NodeKind::PullbackQL: return "PullbackQL";
    case NodeKind::Frobenius: return "Frobenius";
    case NodeKind::Dual: return "Dual";
    case NodeKind::Tensor: return "Tensor";
    case NodeKind::DirectSum: return "DirectSum";
    case NodeKind::Wedge: return "Wedge";
    case NodeKind::Sym: return "Sym";
    case NodeKind::E0: return "E0";
  }
  return "?";
}

NodeKind kind_from_name(const std::string& s) {
  if (s == "LineBundle") return NodeKind::LineBundle;
  if (s == "PullbackQh") return NodeKind::PullbackQh;
  if (s == "PullbackQL") return NodeKind::PullbackQL;
  if (s == "Frobenius") return NodeKind::Frobenius;
  if (s == "Dual") return NodeKind::Dual;
  if (s == "Tensor") return NodeKind::Tensor;
  if (s == "DirectSum") return NodeKind::DirectSum;
  if (s == "Wedge") return NodeKind::Wedge;
  if (s == "Sym") return NodeKind::Sym;
  if (s == "E0") return NodeKind::E0;
  throw std::invalid_argument("expr_from_json: unknown node kind " + s);
}

} // namespace

nlohmann::json expr_to_json(const BundleExpr& e) {
  nlohmann::json j;
  j["kind"] = kind_name(e.kind);
  switch (e.kind) {
    case NodeKind::LineBundle:
      j["a"] = e.p1;
      j["b"] = e.p2;
      break;
    case NodeKind::Frobenius:
      j["a"] = e.p1;
      break;
    case NodeKind::Wedge:
    case NodeKind::Sym:
      j["k"] = e.p1;
      break;
    case NodeKind::E0:
      j["n"] = e.p1;
      j["q"] = e.p2;
      j["k"] = e.p3;
      break;
    default:
      break;
  }
  if (!e.children.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& c : e.children) arr.push_back(expr_to_json(*c));
    j["children"] = arr;
  }
  return j;
}

ExprPtr expr_from_json(const nlohmann::json& j) {
  auto e = std::make_shared<BundleExpr>();
  e->kind = kind_from_name(j.at("kind").get<std::string>());
  switch (e->kind) {
    case NodeKind::LineBundle:
      e->p1 = j.at("a").get<long long>();
      e->p2 = j.at("b").get<long long>();
      break;
    case NodeKind::Frobenius:
      e->p1 = j.at("a").get<long long>();
      break;
    case NodeKind::Wedge:
    case NodeKind::Sym:
      e->p1 = j.at("k").get<long long>();
      break;
    case NodeKind::E0:
      e->p1 = j.at("n").get<long long>();
      e->p2 = j.at("q").get<long long>();
      e->p3 = j.at("k").get<long long>();
      break;
    default:
      break;
  }
  if (j.contains("children"))
    for (const auto& c : j.at("children")) e->children.push_back(expr_from_json(c));
  return e;
}

bool factor_pullback_obstruction(int n, long q) {
  if (n < 2) throw std::invalid_argument("factor_pullback_obstruction: n >= 2 required");
  if (!is_prime_power(q))
    throw std::invalid_argument("factor_pullback_obstruction: q must be a prime power");
  // c1(E0[n,q](-L) (x) O(aL+bh)) = (na - 1) L + (q - 1 + nb) h; a factor
  // pullback would need one coefficient to vanish for integer a or b.
  bool l_coeff_can_vanish = (1 % n == 0);
  bool h_coeff_can_vanish = ((q - 1) % n == 0);
  return !l_coeff_can_vanish && !h_coeff_can_vanish;
}

namespace {

// If value = u * s^2 for the given u != 0 with integer s >= 0, report s.
bool square_quotient(const Int& value, const Int& u, Int& s_out) {
  if (u == 0) return false;
  if (value % u != 0) return false;
  Int q = value / u;
  if (q < 0) return false;
  Int s = boost::multiprecision::sqrt(q);
  if (s * s != q) return false;
  s_out = s;
  return true;
}

void try_emit(std::vector<PullbackSolution>& out, long long a, long long b,
              const Int& alpha, const Int& beta, const Int& u1, const Int& u2,
              const Int& e20, const Int& e11, const Int& e02) {
  // The pulled-back hyperplane class must be nonzero and effective.
  if (alpha < 0 || beta < 0) return;
  if (alpha == 0 && beta == 0) return;
  if (u2 * alpha * alpha != e20) return;
  if (2 * u2 * alpha * beta != e11) return;
  if (u2 * beta * beta != e02) return;
  PullbackSolution s;
  s.a = a;
  s.b = b;
  s.alpha = to_ll(alpha);
  s.beta = to_ll(beta);
  s.u = {u1, u2};
  out.push_back(s);
}

} // namespace

std::vector<PullbackSolution> nondegeneracy_search(long rank, const ChowClass& c,
                                                   long box) {
  if (c.n() != 2)
    throw dimension_mismatch("nondegeneracy_search: implemented for n = 2 only");
  if (rank != 2)
    throw std::invalid_argument("nondegeneracy_search: rank-2 matching only");
  std::vector<PullbackSolution> out;
  for (long long a = -box; a <= box; ++a)
    for (long long b = -box; b <= box; ++b) {
      ChowClass t = chow::twist_chern(rank, c, Int(a), Int(b));
      Int e10 = t.at(1, 0), e01 = t.at(0, 1);
      Int e20 = t.at(2, 0), e11 = t.at(1, 1), e02 = t.at(0, 2);

      // u1 = 1: degree-1 matching pins alpha, beta.
      {
        const Int &alpha = e10, &beta = e01;
        if (!(alpha == 0 && beta == 0) && alpha >= 0 && beta >= 0) {
          Int u2, s;
          bool have_u2 = false;
          if (alpha != 0) {
            if (e20 % (alpha * alpha) == 0) {
              u2 = e20 / (alpha * alpha);
              have_u2 = true;
            }
          } else if (beta != 0) {
            if (e02 % (beta * beta) == 0) {
              u2 = e02 / (beta * beta);
              have_u2 = true;
            }
          }
          if (have_u2)
            try_emit(out, a, b, alpha, beta, Int(1), u2, e20, e11, e02);
        }
      }

      // u1 = 0: the twisted c1 must vanish outright.
      if (e10 == 0 && e01 == 0) {
        if (e20 == 0 && e11 == 0 && e02 == 0) {
          // Any nonzero target class works; record one representative.
          try_emit(out, a, b, Int(1), Int(0), Int(0), Int(0), e20, e11, e02);
        } else if (e20 != 0) {
          for (Int u2 = -boost::multiprecision::abs(e20);
               u2 <= boost::multiprecision::abs(e20); ++u2) {
            if (u2 == 0) continue;
            Int alpha;
            if (!square_quotient(e20, u2, alpha)) continue;
            Int beta;
            if (e02 == 0)
              beta = 0;
            else if (!square_quotient(e02, u2, beta))
              continue;
            try_emit(out, a, b, alpha, beta, Int(0), u2, e20, e11, e02);
          }
        } else if (e02 != 0) {
          // alpha must vanish, so e11 must too.
          if (e11 == 0) {
            for (Int u2 = -boost::multiprecision::abs(e02);
                 u2 <= boost::multiprecision::abs(e02); ++u2) {
              if (u2 == 0) continue;
              Int beta;
              if (!square_quotient(e02, u2, beta)) continue;
              try_emit(out, a, b, Int(0), beta, Int(0), u2, e20, e11, e02);
            }
          }
        }
        // e20 = e02 = 0, e11 != 0 has no solution: alpha or beta vanishes,
        // forcing e11 = 2 u2 alpha beta = 0.
      }
    }
  return out;
}

} // namespace pnpn::bundles
