// Verification batteries behind `cuspk verify`. Each suite expands into
// per-(a,b,m) tasks that return report rows; rows are sorted before output so
// reports do not depend on scheduling.

#ifndef CUSPK_SUITES_HPP
#define CUSPK_SUITES_HPP

#include "cuspk/cyclicbar.hpp"
#include "cuspk/polytopelab.hpp"
#include "cuspk/semigroup.hpp"
#include "cuspk/simplicialx.hpp"
#include "cuspk/wittlab.hpp"

#include <json.hpp>

#include <atomic>
#include <exception>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace cuspk::suites {

inline constexpr int kSchemaVersion = 1;

// Result vocabulary. PASS/FAIL are hard assertions; AGREE/MISMATCH are
// evidence rows; the verdict names come from polytopelab.
inline const std::string kPass = "PASS";
inline const std::string kFail = "FAIL";
inline const std::string kAgree = "AGREE";
inline const std::string kMismatch = "MISMATCH";
inline const std::string kSkipped = "SKIPPED";

struct Row {
  std::string suite;
  std::optional<Int> a, b, m, p, q;
  std::string statement;
  std::string result;
  nlohmann::json details = nlohmann::json::object();

  auto key() const { return std::tie(a, b, m, statement, suite, p, q); }
  friend bool operator==(const Row& x, const Row& y) {
    return x.key() == y.key() && x.result == y.result && x.details == y.details;
  }
};

inline bool row_less(const Row& x, const Row& y) { return x.key() < y.key(); }

inline nlohmann::json to_json(const Row& r) {
  auto opt = [](const std::optional<Int>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); };
  return nlohmann::json{{"schema", kSchemaVersion}, {"suite", r.suite},      {"a", opt(r.a)},
                        {"b", opt(r.b)},            {"m", opt(r.m)},          {"p", opt(r.p)},
                        {"q", opt(r.q)},            {"statement", r.statement}, {"result", r.result},
                        {"details", r.details}};
}

inline Row from_json(const nlohmann::json& j) {
  auto opt = [&](const char* k) -> std::optional<Int> {
    if (!j.contains(k) || j.at(k).is_null()) return std::nullopt;
    return j.at(k).get<Int>();
  };
  Row r;
  r.suite = j.at("suite").get<std::string>();
  r.a = opt("a");
  r.b = opt("b");
  r.m = opt("m");
  r.p = opt("p");
  r.q = opt("q");
  r.statement = j.at("statement").get<std::string>();
  r.result = j.at("result").get<std::string>();
  r.details = j.value("details", nlohmann::json::object());
  return r;
}

inline std::string csv_header() { return "suite,a,b,m,p,q,statement,result,details"; }

inline std::string csv_line(const Row& r) {
  auto opt = [](const std::optional<Int>& v) { return v ? std::to_string(*v) : std::string(); };
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  };
  return r.suite + "," + opt(r.a) + "," + opt(r.b) + "," + opt(r.m) + "," + opt(r.p) + "," + opt(r.q) + "," +
         quote(r.statement) + "," + r.result + "," + quote(r.details.dump());
}

/// 0 when every hard assertion passed, 1 on a violation (including a
/// non-HOLDS verdict on a row the theory covers), 2 if UNDECIDED remains.
inline int exit_code(const std::vector<Row>& rows) {
  bool undecided = false;
  for (const auto& r : rows) {
    const bool covered = r.details.value("theorem", false);
    if (r.result == kFail) return 1;
    if (covered && (r.result == to_string(Status::FailsCandidate) || r.result == to_string(Status::Undecided)))
      return 1;
    if (r.result == to_string(Status::Undecided)) undecided = true;
  }
  return undecided ? 2 : 0;
}

struct SuiteConfig {
  std::vector<Params> pairs;  // empty: the suite's default pairs
  std::optional<Int> m_max;
  std::vector<Int> primes{2, 3, 5, 7};
  std::optional<Int> r_max;
  std::optional<Int> q_max;
  long precision = 128;
  std::size_t budget = kDefaultCellBudget;
  unsigned jobs = 1;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"semigroup", "witt", "kgroups", "prop51", "conjB", "conjC"};
  return names;
}

using Task = std::function<std::vector<Row>()>;

/// Runs tasks on `jobs` threads; the concatenated rows come back sorted.
inline std::vector<Row> run_tasks(const std::vector<Task>& tasks, unsigned jobs) {
  std::vector<std::vector<Row>> results(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i]();
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(tasks.size())));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Row> rows;
  for (auto& r : results) rows.insert(rows.end(), std::make_move_iterator(r.begin()), std::make_move_iterator(r.end()));
  std::stable_sort(rows.begin(), rows.end(), row_less);
  return rows;
}

namespace detail {

inline std::vector<Params> coprime_pairs_up_to(Int b_max) {
  std::vector<Params> out;
  for (Int b = 3; b <= b_max; ++b)
    for (Int a = 2; a < b; ++a)
      if (gcd(a, b) == 1) out.emplace_back(a, b);
  return out;
}

inline std::vector<Params> standard_pairs() { return {Params(2, 3), Params(2, 5), Params(3, 4), Params(3, 5)}; }

inline Row row(const std::string& suite, const Params& p, std::optional<Int> m, const std::string& statement,
               bool ok, nlohmann::json details = nlohmann::json::object()) {
  return Row{suite, p.a(), p.b(), m, std::nullopt, std::nullopt, statement, ok ? kPass : kFail, std::move(details)};
}

inline Row connes_row(const std::string& suite, const Params& p, Int m, const std::string& statement,
                      const HomologyComputer& hc, int q, const SparseIntMatrix& op) {
  try {
    const auto f = cuspk::detail::rank_one_factor(hc, q, op);
    if (!f) return row(suite, p, m, statement, false, {{"error", "homology is not Z in both degrees"}});
    return row(suite, p, m, statement, abs(*f) == m, {{"factor", f->str()}});
  } catch (const TheoremViolation& e) {
    return row(suite, p, m, statement, false, {{"error", e.what()}});
  }
}

}  // namespace detail

// -- semigroup ----------------------------------------------------------------

inline std::vector<Row> semigroup_rows(const Params& p, Int m_max, Int r_max) {
  const std::string s = "semigroup";
  const Int ab = p.ab();
  std::vector<Row> rows;
  auto enumerate_ell = [&](Int m) {
    Int count = 0;
    for (Int i = 1; p.a() * i < m; ++i)
      if ((m - p.a() * i) % p.b() == 0) ++count;
    return count;
  };
  auto enumerate_member = [&](Int m) {
    for (Int i = 0; p.a() * i <= m; ++i)
      if ((m - p.a() * i) % p.b() == 0) return true;
    return false;
  };

  std::optional<Int> bad;
  for (Int m = 1; m <= m_max && !bad; ++m)
    if (ell(p, m) != enumerate_ell(m)) bad = m;
  rows.push_back(detail::row(s, p, std::nullopt, "ell_matches_enumeration", !bad,
                             bad ? nlohmann::json{{"first_bad_m", *bad}} : nlohmann::json{{"m_max", m_max}}));

  bad.reset();
  const MembershipTable member(p, m_max);
  for (Int m = 0; m <= m_max && !bad; ++m)
    if (member(m) != enumerate_member(m) || is_member(p, m) != enumerate_member(m)) bad = m;
  rows.push_back(detail::row(s, p, std::nullopt, "membership_matches_enumeration", !bad,
                             bad ? nlohmann::json{{"first_bad_m", *bad}} : nlohmann::json{{"m_max", m_max}}));

  bad.reset();
  for (Int m = 1; m <= m_max && !bad; ++m)
    if (ell(p, m + ab) != ell(p, m) + 1) bad = m;
  rows.push_back(detail::row(s, p, std::nullopt, "ell_shift_by_ab", !bad,
                             bad ? nlohmann::json{{"first_bad_m", *bad}} : nlohmann::json{{"m_max", m_max}}));

  bad.reset();
  for (Int r = 0; r <= r_max && !bad; ++r)
    for (Int m = r * ab + 1; m <= (r + 1) * ab && !bad; ++m) {
      const Int v = ell(p, m);
      if ((v != r && v != r + 1) || ((m % p.a() == 0 || m % p.b() == 0) && v != r)) bad = m;
    }
  rows.push_back(detail::row(s, p, std::nullopt, "ell_band", !bad,
                             bad ? nlohmann::json{{"first_bad_m", *bad}} : nlohmann::json{{"r_max", r_max}}));

  std::vector<Int> level(static_cast<std::size_t>(r_max + 1), 0);
  for (Int m = 1; m <= (r_max + 2) * ab; ++m) {
    const Int v = ell(p, m);
    if (v <= r_max) ++level[static_cast<std::size_t>(v)];
  }
  rows.push_back(detail::row(s, p, std::nullopt, "ell_zero_count", 2 * level[0] == (p.a() + 1) * (p.b() + 1) - 2,
                             {{"count", level[0]}}));
  bool levels_ok = true;
  for (Int r = 1; r <= r_max; ++r) levels_ok = levels_ok && level[static_cast<std::size_t>(r)] == ab;
  rows.push_back(detail::row(s, p, std::nullopt, "ell_level_sizes", levels_ok, {{"counts", level}}));

  bad.reset();
  for (Int m = 1; m <= m_max && !bad; ++m)
    for (Int d = 1; d <= m && !bad; ++d)
      if (m % d == 0 && ell(p, d) > ell(p, m)) bad = m;
  rows.push_back(detail::row(s, p, std::nullopt, "ell_divisor_monotone", !bad,
                             bad ? nlohmann::json{{"first_bad_m", *bad}} : nlohmann::json{{"m_max", m_max}}));

  const Int v = conductor(p);
  bool cond_ok = true;
  for (Int m = v; m <= v + ab; ++m) cond_ok = cond_ok && enumerate_member(m);
  if (v > 0) cond_ok = cond_ok && !enumerate_member(v - 1);
  rows.push_back(detail::row(s, p, std::nullopt, "conductor", cond_ok, {{"conductor", v}}));

  for (Int r = 0; r <= r_max; ++r) {
    const TruncationSet S = truncation_S(p, r);
    const std::string tag = "(r=" + std::to_string(r) + ")";
    const Int card = static_cast<Int>(S.size());
    bool closed = true;
    for (Int m : S.elements())
      for (Int d = 1; d <= m; ++d)
        if (m % d == 0 && !S.contains(d)) closed = false;
    rows.push_back(detail::row(s, p, std::nullopt, "S_divisor_closed" + tag, closed));
    rows.push_back(detail::row(s, p, std::nullopt, "card_S" + tag, 2 * card == (p.a() + 1) * (p.b() + 1) - 2 + 2 * r * ab,
                               {{"card", card}}));
    const Int ca = static_cast<Int>(S.divide(p.a()).size());
    const Int cb = static_cast<Int>(S.divide(p.b()).size());
    const Int cab = static_cast<Int>(S.divide(ab).size());
    rows.push_back(detail::row(s, p, std::nullopt, "card_S_div_a" + tag, ca == (r + 1) * p.b(), {{"card", ca}}));
    rows.push_back(detail::row(s, p, std::nullopt, "card_S_div_b" + tag, cb == (r + 1) * p.a(), {{"card", cb}}));
    rows.push_back(detail::row(s, p, std::nullopt, "card_S_div_ab" + tag, cab == r + 1, {{"card", cab}}));
  }
  return rows;
}

// -- witt -----------------------------------------------------------------------

/// Randomized ghost-coordinate identities over W_S(Z), S = divisors(24).
inline std::vector<Row> witt_identity_rows(int cases, unsigned seed = 24) {
  const TruncationSet s = TruncationSet::divisors_of(24);
  const std::vector<Int> divs = s.elements();
  std::mt19937 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, divs.size() - 1);
  std::uniform_int_distribution<int> coord(-9, 9);
  auto random_witt = [&](const TruncationSet& t) {
    std::vector<BigInt> c;
    for (std::size_t k = 0; k < t.size(); ++k) c.emplace_back(coord(rng));
    return GhostWitt(t, c);
  };
  struct Tally {
    int checked = 0, failed = 0;
  };
  std::map<std::string, Tally> tally;
  auto record = [&](const std::string& name, bool ok) {
    auto& t = tally[name];
    ++t.checked;
    if (!ok) ++t.failed;
  };
  for (int k = 0; k < cases; ++k) {
    const Int n = divs[pick(rng)], m = divs[pick(rng)];
    const GhostWitt x = random_witt(s);
    const GhostWitt y = random_witt(s.divide(n));
    const GhostWitt z = random_witt(s.divide(n * m));
    record("F_m_F_n_eq_F_mn", witt_F(witt_F(x, n), m) == witt_F(x, m * n));
    record("V_n_V_m_eq_V_nm", witt_V(s, witt_V(s.divide(n), z, m), n) == witt_V(s, z, n * m));
    record("F_n_V_n_eq_n", witt_F(witt_V(s, y, n), n) == witt_scale(y, n));
    if (gcd(m, n) == 1) record("F_m_V_n_eq_V_n_F_m", witt_F(witt_V(s, y, n), m) == witt_V(s.divide(m), witt_F(y, m), n));
    record("projection_formula", witt_mul(x, witt_V(s, y, n)) == witt_V(s, witt_mul(witt_F(x, n), y), n));
    record("ghost_round_trip", unghost(s, ghost(x)) == x);
  }
  std::vector<Row> rows;
  for (const auto& [name, t] : tally)
    rows.push_back(Row{"witt", std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt, name,
                       t.failed == 0 ? kPass : kFail, {{"cases", t.checked}, {"failed", t.failed}, {"seed", seed}}});
  return rows;
}

/// Operator matrices on the p-typical decomposition of W_{S(a,b,r)}.
inline std::vector<Row> witt_operator_rows(const Params& pr, Int p, Int r) {
  const TruncationSet s = truncation_S(pr, r);
  bool defined = true, fv = true, vv = true, ff = true;
  for (Int n = 1; n <= 8; ++n) {
    const TruncationSet sn = s.divide(n);
    const AbelianMap v = verschiebung(s, n, p), f = frobenius(s, n, p);
    defined = defined && v.well_defined() && f.well_defined();
    fv = fv && compose(f, v) == scalar_map(PTypicalProfile(sn, p), n);
    for (Int k = 1; k <= 4; ++k) {
      vv = vv && compose(verschiebung(s, n, p), verschiebung(sn, k, p)) == verschiebung(s, n * k, p);
      ff = ff && compose(frobenius(sn, k, p), frobenius(s, n, p)) == frobenius(s, n * k, p);
    }
  }
  auto mk = [&](const std::string& st, bool ok) {
    return Row{"witt", pr.a(), pr.b(), std::nullopt, p, 2 * r, st, ok ? kPass : kFail, {{"r", r}}};
  };
  return {mk("matrices_well_defined", defined), mk("matrix_F_n_V_n_eq_n", fv), mk("matrix_V_composition", vv),
          mk("matrix_F_composition", ff)};
}

// -- kgroups --------------------------------------------------------------------

inline std::vector<Row> kgroup_rows(const Params& pr, Int p, Int q) {
  const KGroupResult res = relative_k_group(pr, p, q);
  nlohmann::json d{{"group", res.group.to_string()}, {"perfect_field_only", res.perfect_field_only}};
  auto mk = [&](const std::string& st, bool ok, nlohmann::json det) {
    return Row{"kgroups", pr.a(), pr.b(), std::nullopt, p, q, st, ok ? kPass : kFail, std::move(det)};
  };
  if (q < 0 || q % 2 != 0) return {mk("vanishes", res.group.trivial(), d)};
  d["length"] = res.length;
  d["expected_length"] = res.expected_length;
  nlohmann::json e{{"group", res.group.to_string()}, {"restricted", res.restricted.to_string()}};
  return {mk("length", res.length == res.expected_length, d),
          mk("restriction_iso", res.restriction_iso && res.group == res.restricted, e)};
}

// -- prop51 ---------------------------------------------------------------------

inline std::vector<Row> prop51_rows(const Params& p, Int m, std::size_t budget) {
  const std::string s = "prop51";
  std::vector<Row> rows;
  HomologySummary expected;
  try {
    expected = expected_ty_homology(p, m);
    rows.push_back(detail::row(s, p, m, "y_model_matches_closed_form", true, {{"homology", expected.to_string()}}));
  } catch (const TheoremViolation& e) {
    rows.push_back(detail::row(s, p, m, "y_model_matches_closed_form", false, {{"error", e.what()}}));
    return rows;
  }
  const bool generic = m % p.a() != 0 && m % p.b() != 0;
  const int q = static_cast<int>(2 * ell(p, m));

  const SmallModelA A(p, m);
  const HomologyComputer cone_h(mapping_cone(A.complex(), small_complex_B(p, m), f_R_map(A)));
  rows.push_back(detail::row(s, p, m, "cone_matches_closed_form", cone_h.summary().same_groups(expected),
                             {{"homology", cone_h.summary().to_string()}}));
  if (generic) {
    rows.push_back(detail::connes_row(s, p, m, "connes_factor_cone", cone_h, q, connes_on_cone(A, q)));
  }

  const bool bar_fits = m <= 24 && (std::size_t{1} << m) <= budget;
  if (!bar_fits) {
    rows.push_back(Row{s, p.a(), p.b(), m, std::nullopt, std::nullopt, "bar_matches_closed_form", kSkipped,
                       {{"reason", "2^m exceeds budget"}}});
    return rows;
  }
  const BarModel bar(p, m);
  const HomologyComputer bar_h(bar.complex());
  rows.push_back(detail::row(s, p, m, "bar_matches_closed_form", bar_h.summary().same_groups(expected),
                             {{"homology", bar_h.summary().to_string()}}));
  if (generic) {
    rows.push_back(detail::connes_row(s, p, m, "connes_factor_bar", bar_h, q, bar.connes(q)));
  }
  return rows;
}

// -- conjB ----------------------------------------------------------------------

inline std::vector<Row> conjb_rows(const Params& p, Int m, std::size_t budget) {
  const std::string s = "conjB";
  std::vector<Row> rows;
  try {
    const ConjectureBReport r = conjecture_b_homology_check(p, m, budget);
    rows.push_back(Row{s, p.a(), p.b(), m, std::nullopt, std::nullopt, "x_vs_y_homology",
                       r.space_level_agree ? kAgree : kMismatch,
                       {{"x", r.x.to_string()}, {"y", r.y.to_string()}}});
    rows.push_back(detail::row(s, p, m, "orbit_homology_matches", r.t_level_agree,
                               {{"x", r.tx.to_string()}, {"y", r.ty.to_string()}}));
  } catch (const TheoremViolation& e) {
    rows.push_back(detail::row(s, p, m, "orbit_homology_matches", false, {{"error", e.what()}}));
  } catch (const ResourceBound& e) {
    rows.push_back(Row{s, p.a(), p.b(), m, std::nullopt, std::nullopt, "x_vs_y_homology", kSkipped,
                       {{"reason", e.what()}}});
  }
  for (Int d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    const std::string st = "fixed_points(s=" + std::to_string(d) + ")";
    if (m / d > 24) {
      rows.push_back(Row{s, p.a(), p.b(), m, std::nullopt, std::nullopt, st, kSkipped, {{"reason", "m/s > 24"}}});
      continue;
    }
    rows.push_back(detail::row(s, p, m, st, fixed_point_check(p, m, d)));
  }
  if (ell(p, m) == 1 && m % p.a() != 0 && m % p.b() != 0) {
    const GeneratorCycle g = generator_cycle(p, m);
    rows.push_back(detail::row(s, p, m, "generator_cycle", g.is_cycle && g.generates,
                               {{"l", g.l},
                                {"m_prime", g.m_prime},
                                {"terms", g.terms.size()},
                                {"is_cycle", g.is_cycle},
                                {"generates", g.generates}}));
  }
  return rows;
}

// -- conjC ----------------------------------------------------------------------

inline Row verdict_row(const Params& p, Int m, const std::string& statement, const Verdict& v) {
  const Int l = ell(p, m);
  return Row{"conjC",
             p.a(),
             p.b(),
             m,
             std::nullopt,
             std::nullopt,
             statement,
             to_string(v.status),
             {{"precision_bits", v.precision_bits}, {"witness", v.witness}, {"ell", l}, {"theorem", l <= 1}}};
}

inline std::vector<Row> conjc_rows(const Params& p, Int m, long precision) {
  std::vector<Row> rows;
  constexpr long kMaxBits = 1024;
  rows.push_back(verdict_row(p, m, "origin_not_in_Q",
                             with_escalation([&](long bits) { return check_c1(p, m, bits); }, precision, kMaxBits)));
  if (m % p.a() == 0)
    rows.push_back(verdict_row(
        p, m, "a_summand_intersection",
        with_escalation([&](long bits) { return check_c2_c3(p, m, bits, 'a'); }, precision, kMaxBits)));
  if (m % p.b() == 0)
    rows.push_back(verdict_row(
        p, m, "b_summand_intersection",
        with_escalation([&](long bits) { return check_c2_c3(p, m, bits, 'b'); }, precision, kMaxBits)));
  if (m % p.a() != 0 && m % p.b() != 0) {
    Row r = verdict_row(p, m, "boundary_in_Q", check_c4(p, m));
    // outside the polygon case the theory makes no claim the tool can test
    if (r.result == to_string(Status::Unsupported)) r.details["theorem"] = false;
    rows.push_back(std::move(r));
  }
  return rows;
}

// -- dispatch -------------------------------------------------------------------

inline std::vector<Task> make_tasks(const std::string& suite, const SuiteConfig& cfg) {
  std::vector<Task> tasks;
  auto pairs_or = [&](std::vector<Params> dflt) { return cfg.pairs.empty() ? dflt : cfg.pairs; };
  if (suite == "semigroup") {
    for (const auto& p : pairs_or(detail::coprime_pairs_up_to(10))) {
      const Int m_max = cfg.m_max.value_or(5 * p.ab());
      const Int r_max = cfg.r_max.value_or(4);
      tasks.push_back([p, m_max, r_max] { return semigroup_rows(p, m_max, r_max); });
    }
  } else if (suite == "witt") {
    tasks.push_back([] { return witt_identity_rows(1000); });
    const Int r_max = cfg.r_max.value_or(2);
    for (const auto& p : pairs_or(detail::standard_pairs()))
      for (Int prime : cfg.primes)
        for (Int r = 0; r <= r_max; ++r) tasks.push_back([p, prime, r] { return witt_operator_rows(p, prime, r); });
  } else if (suite == "kgroups") {
    const Int q_max = cfg.q_max.value_or(2 * cfg.r_max.value_or(3));
    for (const auto& p : pairs_or(detail::standard_pairs()))
      for (Int prime : cfg.primes)
        for (Int q = 0; q <= q_max; ++q) tasks.push_back([p, prime, q] { return kgroup_rows(p, prime, q); });
  } else if (suite == "prop51") {
    for (const auto& p : pairs_or(detail::standard_pairs()))
      for (Int m = 1; m <= cfg.m_max.value_or(12); ++m)
        tasks.push_back([p, m, budget = cfg.budget] { return prop51_rows(p, m, budget); });
  } else if (suite == "conjB") {
    for (const auto& p : pairs_or(detail::standard_pairs()))
      for (Int m = 1; m <= cfg.m_max.value_or(12); ++m)
        tasks.push_back([p, m, budget = cfg.budget] { return conjb_rows(p, m, budget); });
  } else if (suite == "conjC") {
    for (const auto& p : pairs_or({Params(2, 3), Params(2, 5), Params(3, 4)}))
      for (Int m = 1; m <= cfg.m_max.value_or(3 * p.ab()); ++m)
        tasks.push_back([p, m, bits = cfg.precision] { return conjc_rows(p, m, bits); });
  } else if (suite == "all") {
    for (const auto& name : suite_names()) {
      auto more = make_tasks(name, cfg);
      tasks.insert(tasks.end(), more.begin(), more.end());
    }
  } else {
    throw PreconditionViolation("unknown suite: " + suite);
  }
  return tasks;
}

inline std::vector<Row> run_suite(const std::string& suite, const SuiteConfig& cfg) {
  return run_tasks(make_tasks(suite, cfg), cfg.jobs);
}

// -- report merging ---------------------------------------------------------------

struct MergeResult {
  std::vector<Row> rows;
  std::vector<std::pair<Row, Row>> conflicts;
};

/// Sorts, drops exact duplicates, and flags rows sharing a key with
/// different results or details.
inline MergeResult merge_rows(std::vector<Row> rows) {
  std::stable_sort(rows.begin(), rows.end(), row_less);
  MergeResult out;
  for (auto& r : rows) {
    if (!out.rows.empty() && out.rows.back().key() == r.key()) {
      if (!(out.rows.back() == r)) out.conflicts.emplace_back(out.rows.back(), r);
      continue;
    }
    out.rows.push_back(std::move(r));
  }
  return out;
}

}  // namespace cuspk::suites

#endif
