// kronpencil: exact decisions and completions for matrix pencils whose
// Kronecker form has only minimal column (or, transposed, row) indices.
//
// Exit codes: 0 = yes / success, 1 = no, 2 = error or out-of-scope input
// (one-line diagnostic naming the failing check on stderr).

#include <cstdint>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "kron/completion.hpp"
#include "kron/criteria.hpp"
#include "kron/errors.hpp"
#include "kron/field.hpp"
#include "kron/invariants.hpp"
#include "kron/io.hpp"
#include "kron/oracle.hpp"
#include "kron/pencil.hpp"

namespace {

using namespace kron;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

int fail(const std::string& message) {
  std::cerr << "error: " << message << '\n';
  return kExitError;
}

/// Instantiates the callable with the arithmetic named by the spec.
template <typename Fn>
int with_field(const FieldSpec& spec, Fn&& fn) {
  if (spec.kind == FieldSpec::Kind::Rationals) return fn(RationalField());
  return fn(PrimeField(spec.p));
}

std::string eps_set_string(const PreinjInvariants& inv) {
  std::vector<long long> eps = inv.epsilon_list();  // descending
  std::string out = "{";
  for (std::size_t i = eps.size(); i-- > 0;) {  // print ascending
    out += std::to_string(eps[i]);
    if (i > 0) out += ",";
  }
  return out + "}";
}

// ---- invariants <pencil.json> [--json] ------------------------------------

int run_invariants(const std::string& path, bool as_json) {
  const json j = load_json(path);
  return with_field(field_of_json(j), [&](const auto& fld) {
    const auto p = pencil_from_json(fld, j);
    const PreinjInvariants inv = minimal_column_indices(p);
    if (as_json) {
      std::cout << invariants_to_json(inv).dump(2) << '\n';
    } else {
      std::cout << "minimal column indices: " << eps_set_string(inv) << '\n'
                << "module: " << pretty(inv) << '\n';
    }
    return kExitYes;
  });
}

// ---- check-mono <sub.inv> <sup.inv> [--explain] ----------------------------

int run_check_mono(const std::string& sub_path, const std::string& sup_path,
                   bool explain) {
  const InvariantsFile a = invariants_from_json(load_json(sub_path));
  const InvariantsFile c = invariants_from_json(load_json(sup_path));
  if (a.preinjective != c.preinjective) {
    return fail("ParseError: mixed invariant kinds");
  }
  if (!a.preinjective) {
    return fail(
        "InvalidShape: the embedding criterion applies to preinjective "
        "invariants; preprojective questions reduce to transposed pencils");
  }
  const bool yes = mono_exists(a.inv, c.inv);
  if (explain) {
    // The decision compares a_0 against c_0 and, for every l >= 1, the
    // prefix sums of i*a_i against those of i*c_i.
    const std::size_t len = std::max(a.inv.size(), c.inv.size());
    std::cout << "l=0 (zero indices): " << a.inv.at(0)
              << " <= " << c.inv.at(0)
              << (a.inv.at(0) <= c.inv.at(0) ? "   ok" : "   VIOLATED")
              << '\n';
    long long sa = 0, sc = 0;
    for (std::size_t l = 1; l < std::max<std::size_t>(len, 1); ++l) {
      const long long ll = static_cast<long long>(l);
      sa += ll * a.inv.at(l);
      sc += ll * c.inv.at(l);
      std::cout << "l=" << l << " (prefix sums of i*mult_i): " << sa
                << " <= " << sc << (sa <= sc ? "   ok" : "   VIOLATED")
                << '\n';
    }
  }
  std::cout << (yes ? "yes: " + pretty(a.inv) + " embeds into " +
                          pretty(c.inv)
                    : "no: " + pretty(a.inv) + " does not embed into " +
                          pretty(c.inv))
            << '\n';
  return yes ? kExitYes : kExitNo;
}

// ---- check-subpencil <sub.json> <sup.json> [--row-minimal] [--json] --------

int run_check_subpencil(const std::string& sub_path,
                        const std::string& sup_path, bool row_minimal,
                        bool as_json) {
  const json js = load_json(sub_path);
  const json jp = load_json(sup_path);
  const FieldSpec spec = field_of_json(js);
  if (spec != field_of_json(jp)) {
    return fail("ShapeMismatch: pencils over different fields");
  }
  return with_field(spec, [&](const auto& fld) {
    const auto sub = pencil_from_json(fld, js);
    const auto sup = pencil_from_json(fld, jp);
    const auto w =
        row_minimal ? is_subpencil_rm(sub, sup) : is_subpencil_cm(sub, sup);
    if (!w) {
      if (as_json) {
        std::cout << json{{"subpencil", false}}.dump(2) << '\n';
      } else {
        std::cout << "no\n";
      }
      return kExitNo;
    }
    if (as_json) {
      std::cout << json{{"subpencil", true},
                        {"b_seq", w->b_seq},
                        {"linking_mult", w->linking.mult()},
                        {"linking_kind", row_minimal ? "preprojective"
                                                     : "preinjective"},
                        {"alpha", w->alpha},
                        {"beta", w->beta}}
                       .dump(2)
                << '\n';
    } else {
      const std::string l_name =
          row_minimal ? pretty(PreprojInvariants(w->linking.mult()))
                      : pretty(w->linking);
      std::cout << "yes\n"
                << "b = " << mult_string(w->b_seq) << '\n'
                << "L = " << l_name << '\n'
                << "alpha = " << w->alpha << ", beta = " << w->beta << '\n';
    }
    return kExitYes;
  });
}

// ---- complete <sub.json> <sup.json> --seed N --out <completion.json> -------

int run_complete(const std::string& sub_path, const std::string& sup_path,
                 std::uint64_t seed, const std::string& out_path) {
  const json js = load_json(sub_path);
  const json jp = load_json(sup_path);
  const FieldSpec spec = field_of_json(js);
  if (spec != field_of_json(jp)) {
    return fail("ShapeMismatch: pencils over different fields");
  }
  return with_field(spec, [&](const auto& fld) {
    const auto sub = pencil_from_json(fld, js);
    const auto sup = pencil_from_json(fld, jp);
    try {
      const auto r = complete(sub, sup, seed);
      if (!verify_completion(sub, sup, r)) {
        return fail("VerificationFailed: completion does not re-verify");
      }
      save_json(out_path, completion_to_json(r));
      std::cout << "completion written to " << out_path << '\n'
                << "L = " << pretty(r.linking.linking) << ", border blocks "
                << r.A12.rows() << "x" << r.A12.cols() << " / "
                << r.A21.rows() << "x" << r.A21.cols() << " / "
                << r.A22.rows() << "x" << r.A22.cols() << '\n';
      return kExitYes;
    } catch (const NotSubpencil& e) {
      std::cout << "no: " << e.what() << '\n';
      return kExitNo;
    }
  });
}

// ---- verify <sub.json> <sup.json> <completion.json> -------------------------

int run_verify(const std::string& sub_path, const std::string& sup_path,
               const std::string& completion_path) {
  const json js = load_json(sub_path);
  const json jp = load_json(sup_path);
  const json jc = load_json(completion_path);
  const FieldSpec spec = field_of_json(js);
  if (spec != field_of_json(jp) || spec != field_of_json(jc)) {
    return fail("ShapeMismatch: files over different fields");
  }
  return with_field(spec, [&](const auto& fld) {
    const auto sub = pencil_from_json(fld, js);
    const auto sup = pencil_from_json(fld, jp);
    const auto r = completion_from_json(fld, jc);
    if (verify_completion(sub, sup, r)) {
      std::cout << "verification passed\n";
      return kExitYes;
    }
    std::cout << "verification failed\n";
    return kExitNo;
  });
}

// ---- canonical <inv.json> --out <pencil.json> [--field SPEC] ----------------

int run_canonical(const std::string& inv_path, const std::string& out_path,
                  const std::string& field_name) {
  const InvariantsFile f = invariants_from_json(load_json(inv_path));
  return with_field(parse_field_spec(field_name), [&](const auto& fld) {
    using FieldT = std::decay_t<decltype(fld)>;
    Pencil<FieldT> p = pencil_of_module(f.inv, fld);
    if (!f.preinjective) {
      p = Pencil<FieldT>(p.A.transpose(), p.B.transpose());
    }
    save_json(out_path, pencil_to_json(p));
    std::cout << "canonical " << p.rows() << "x" << p.cols()
              << " pencil written to " << out_path << '\n';
    return kExitYes;
  });
}

// ---- oracle audit commands (hidden) ----------------------------------------

PreinjInvariants load_preinjective(const std::string& path) {
  const InvariantsFile f = invariants_from_json(load_json(path));
  if (!f.preinjective) {
    throw ParseError("oracle commands take preinjective invariants");
  }
  return f.inv;
}

int report_yes_no(bool yes) {
  std::cout << (yes ? "yes" : "no") << '\n';
  return yes ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact subpencil decisions, invariants, and explicit completions for "
      "matrix pencils with only minimal column (or row) indices."};
  app.require_subcommand(1);
  int rc = kExitYes;

  // invariants
  std::string inv_pencil;
  bool inv_json = false;
  auto* cmd_inv = app.add_subcommand(
      "invariants", "Extract the minimal column indices of a pencil");
  cmd_inv->add_option("pencil", inv_pencil, "pencil JSON file")->required();
  cmd_inv->add_flag("--json", inv_json, "machine-readable output");
  cmd_inv->callback([&] { rc = run_invariants(inv_pencil, inv_json); });

  // check-mono
  std::string cm_sub, cm_sup;
  bool cm_explain = false;
  auto* cmd_mono = app.add_subcommand(
      "check-mono",
      "Decide whether one preinjective module embeds into another");
  cmd_mono->add_option("sub", cm_sub, "invariants JSON file")->required();
  cmd_mono->add_option("sup", cm_sup, "invariants JSON file")->required();
  cmd_mono->add_flag("--explain", cm_explain,
                     "print the prefix-sum inequality table");
  cmd_mono->callback([&] { rc = run_check_mono(cm_sub, cm_sup, cm_explain); });

  // check-subpencil
  std::string cs_sub, cs_sup;
  bool cs_rm = false, cs_json = false;
  auto* cmd_sp = app.add_subcommand(
      "check-subpencil",
      "Decide the subpencil relation and print its witness");
  cmd_sp->add_option("sub", cs_sub, "pencil JSON file")->required();
  cmd_sp->add_option("sup", cs_sup, "pencil JSON file")->required();
  cmd_sp->add_flag("--row-minimal", cs_rm,
                   "treat inputs as row-minimal pencils");
  cmd_sp->add_flag("--json", cs_json, "machine-readable output");
  cmd_sp->callback(
      [&] { rc = run_check_subpencil(cs_sub, cs_sup, cs_rm, cs_json); });

  // complete
  std::string co_sub, co_sup, co_out;
  std::uint64_t co_seed = 0;
  auto* cmd_co = app.add_subcommand(
      "complete", "Construct and write an explicit completion");
  cmd_co->add_option("sub", co_sub, "pencil JSON file")->required();
  cmd_co->add_option("sup", co_sup, "pencil JSON file")->required();
  cmd_co->add_option("--seed", co_seed, "seed for free coefficients");
  cmd_co->add_option("--out", co_out, "output completion JSON file")
      ->required();
  cmd_co->callback([&] { rc = run_complete(co_sub, co_sup, co_seed, co_out); });

  // verify
  std::string ve_sub, ve_sup, ve_comp;
  auto* cmd_ve = app.add_subcommand(
      "verify", "Re-check a completion file from scratch");
  cmd_ve->add_option("sub", ve_sub, "pencil JSON file")->required();
  cmd_ve->add_option("sup", ve_sup, "pencil JSON file")->required();
  cmd_ve->add_option("completion", ve_comp, "completion JSON file")
      ->required();
  cmd_ve->callback([&] { rc = run_verify(ve_sub, ve_sup, ve_comp); });

  // canonical
  std::string ca_inv, ca_out, ca_field = "Q";
  auto* cmd_ca = app.add_subcommand(
      "canonical", "Write the canonical pencil of an invariant vector");
  cmd_ca->add_option("invariants", ca_inv, "invariants JSON file")
      ->required();
  cmd_ca->add_option("--out", ca_out, "output pencil JSON file")->required();
  cmd_ca->add_option("--field", ca_field, "coefficient field (Q or GF(p))");
  cmd_ca->callback([&] { rc = run_canonical(ca_inv, ca_out, ca_field); });

  // oracle (hidden audit commands)
  auto* cmd_or = app.add_subcommand("oracle", "");
  cmd_or->group("");  // hidden from help
  std::string or_a, or_c;
  std::uint64_t or_p = 2;
  long long or_budget = kOracleNodeBudget;

  auto* or_mono = cmd_or->add_subcommand(
      "mono-brute", "matrix search for an embedding over GF(p)");
  or_mono->add_option("sub", or_a)->required();
  or_mono->add_option("sup", or_c)->required();
  or_mono->add_option("--p", or_p, "prime modulus");
  or_mono->add_option("--budget", or_budget, "search node budget");
  or_mono->callback([&] {
    rc = report_yes_no(mono_exists_bruteforce(
        load_preinjective(or_a), load_preinjective(or_c), or_p, or_budget));
  });

  auto* or_epi = cmd_or->add_subcommand(
      "epi-brute", "matrix search for a surjection over GF(p)");
  or_epi->add_option("big", or_a)->required();
  or_epi->add_option("quot", or_c)->required();
  or_epi->add_option("--p", or_p, "prime modulus");
  or_epi->add_option("--budget", or_budget, "search node budget");
  or_epi->callback([&] {
    rc = report_yes_no(epi_exists_bruteforce(
        load_preinjective(or_a), load_preinjective(or_c), or_p, or_budget));
  });

  auto* or_sf = cmd_or->add_subcommand(
      "subfactor-brute", "matrix search over all linking candidates");
  or_sf->add_option("sub", or_a)->required();
  or_sf->add_option("sup", or_c)->required();
  or_sf->add_option("--p", or_p, "prime modulus");
  or_sf->add_option("--budget", or_budget, "search node budget");
  or_sf->callback([&] {
    OracleCache cache;
    rc = report_yes_no(subfactor_bruteforce_matrix(
        load_preinjective(or_a), load_preinjective(or_c), or_p, or_budget,
        &cache));
  });

  auto* or_lk = cmd_or->add_subcommand(
      "linking-feasible", "integer search for a linking multiplicity vector");
  or_lk->add_option("sub", or_a)->required();
  or_lk->add_option("sup", or_c)->required();
  or_lk->callback([&] {
    rc = report_yes_no(
        linking_system_feasible(load_preinjective(or_a),
                                load_preinjective(or_c)));
  });
  cmd_or->require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  } catch (const Error& e) {
    return fail(e.what());
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return rc;
}
