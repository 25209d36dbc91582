#include "semiperfect/commands.hpp"

#include <iostream>

#include "semiperfect/errors.hpp"
#include "semiperfect/idempotents.hpp"
#include "semiperfect/invertibility.hpp"
#include "semiperfect/module.hpp"
#include "semiperfect/semisimple.hpp"

namespace semiperfect {

namespace fs = std::filesystem;
using io::Json;

namespace {

std::ostream& log_of(const CommandOptions& opt) {
  return opt.log != nullptr ? *opt.log : std::cerr;
}

Json family_report_json(const FamilyReport& r) {
  return Json{{"idempotent", r.idempotent},
              {"orthogonal", r.orthogonal},
              {"zero_convergent", r.zero_convergent},
              {"complete", r.complete},
              {"detail", r.detail}};
}

void write_report(const CommandOptions& opt, const ScenarioReport& report) {
  io::write_json(opt.out_dir / "report.json", report.to_json());
}

int claims_exit(const ScenarioReport& report) {
  return report.all_true() ? kExitOk : kExitClaimFailed;
}

// Members of a family worth checking one at a time.
std::vector<EndoElement> sample_members(const EndoFamily& f) {
  std::vector<EndoElement> out(f.head().begin(), f.head().end());
  if (f.tail()) {
    for (std::size_t k = 0; k < 4; ++k) out.push_back(f.member(f.head().size() + k));
  }
  return out;
}

bool all_local(const EndoFamily& f) {
  for (const auto& x : sample_members(f)) {
    if (classify_idempotent(x) != IdempotentKind::kLocalIdempotent) return false;
  }
  return true;
}

Json module_json_of(const Json& j) {
  if (j.is_object() && j.contains("module") && !j.contains("summands") && !j.contains("pattern")) return j.at("module");
  return j;
}

PatternMatrix example_h(const RingDescriptor& ring) {
  return PatternMatrix::band(ring, 1, AdicScalar::monomial(ring, 1, 1));
}

EndoFamily bad_lifting_family(const ModulePtr& module) {
  const RingDescriptor ring = module->ring();
  // e'_j = E_jj - t E_{j,j+1}
  PatternMatrix templ = PatternMatrix::sparse(
      ring, {{0, 0, AdicScalar::one(ring)}, {0, 1, -AdicScalar::monomial(ring, 1, 1)}});
  return EndoFamily(module, {}, TranslationTail{PatternMatrix::zero(ring), std::move(templ), 0});
}

// b_j g == sum_{i=j..k} t^(i-j) b_i for j <= k.
bool split_witness_shape(const EndoElement& g, std::size_t k) {
  const RingDescriptor ring = g.ring();
  for (std::size_t j = 0; j <= k; ++j) {
    MatrixRow expected;
    for (std::size_t i = j; i <= k; ++i) expected.emplace_back(i, AdicScalar::monomial(ring, 1, static_cast<unsigned>(i - j)));
    if (g.pattern().row(j) != expected) return false;
  }
  return true;
}

bool certificate_holds(const EndoElement& u, const NonInvertibilityCertificate& cert) {
  for (std::size_t n = 1; n <= cert.support_sizes.size(); ++n) {
    if (cert.support_sizes[n - 1] < n) return false;
  }
  return !cert.support_sizes.empty() && verify_support_growth(u, cert);
}

}  // namespace

bool ScenarioReport::all_true() const {
  for (const auto& c : claims) {
    if (!c.outcome) return false;
  }
  return !claims.empty();
}

Json ScenarioReport::to_json() const {
  Json out = Json::array();
  for (const auto& c : claims) out.push_back(Json{{"claim", c.id}, {"outcome", c.outcome}, {"witness", c.witness}});
  return out;
}

int guarded(const CommandOptions& opt, const std::function<int()>& body) {
  std::ostream& log = log_of(opt);
  try {
    return body();
  } catch (const BackendUnsupported& e) {
    log << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const NotSummable& e) {
    log << "unsupported: " << e.what() << "\n";
    return kExitUnsupported;
  } catch (const NonInvertibleSum& e) {
    log << "claim failed: " << e.what() << "\n";
    return kExitClaimFailed;
  } catch (const NoConvergence& e) {
    log << "internal error: " << e.what() << "\n";
    return kExitClaimFailed;
  } catch (const Error& e) {
    log << "invalid input: " << e.what() << "\n";
    return kExitInputError;
  } catch (const nlohmann::json::exception& e) {
    log << "invalid input: " << e.what() << "\n";
    return kExitInputError;
  } catch (const fs::filesystem_error& e) {
    log << "file error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    log << "internal error: " << e.what() << "\n";
    return kExitClaimFailed;
  }
}

int cmd_decompose(const CommandOptions& opt, const fs::path& presentation) {
  return guarded(opt, [&] {
    const ScalarMatrix a = io::presentation_from_json(io::read_json(presentation), opt.ring);
    const SmithResult snf = smith_decompose(a);
    const std::size_t rows = a.rows(), cols = a.cols();
    const bool witness_ok = snf.row_transform * a * snf.col_transform == snf.diagonal &&
                            snf.row_transform * snf.row_inverse == ScalarMatrix::identity(a.ring(), rows) &&
                            snf.col_transform * snf.col_inverse == ScalarMatrix::identity(a.ring(), cols);
    if (!witness_ok) throw std::logic_error("smith_decompose: witness transforms do not reconstruct the input");
    io::write_json(opt.out_dir / "module.json", io::module_to_json(snf.module));
    Json w{{"diagonal", io::scalar_matrix_to_json(snf.diagonal)},
           {"row_transform", io::scalar_matrix_to_json(snf.row_transform)},
           {"row_inverse", io::scalar_matrix_to_json(snf.row_inverse)},
           {"col_transform", io::scalar_matrix_to_json(snf.col_transform)},
           {"col_inverse", io::scalar_matrix_to_json(snf.col_inverse)},
           {"summand_rows", snf.summand_rows}};
    io::write_json(opt.out_dir / "smith_witness.json", w);
    return kExitOk;
  });
}

int cmd_certify_semiperfect(const CommandOptions& opt, const fs::path& module) {
  return guarded(opt, [&] {
    const ModulePtr m = io::module_from_json(module_json_of(io::read_json(module)), opt.ring);
    const IdempotentFamily fam = certify_semiperfect(m);
    const FamilyReport rep = fam.validate();
    io::write_json(opt.out_dir / "family.json", io::family_to_json(fam));
    ScenarioReport report;
    report.artifacts = {"family.json"};
    report.claims.push_back({"idempotent", rep.idempotent, Json()});
    report.claims.push_back({"orthogonal", rep.orthogonal, Json()});
    report.claims.push_back({"zero_convergent", rep.zero_convergent, Json()});
    report.claims.push_back({"complete", rep.complete, "family.json"});
    report.claims.push_back({"local_members", all_local(fam.members), Json()});
    write_report(opt, report);
    return claims_exit(report);
  });
}

ScenarioReport jacobson_gap_report(Coeff p, std::size_t K, const std::optional<fs::path>& out_dir) {
  const RingDescriptor ring = RingDescriptor::pattern(p);
  const ModulePtr module = std::make_shared<const DecomposedModule>(DecomposedModule::free_omega(ring));
  const EndoElement h = EndoElement::from_pattern(module, example_h(ring));
  const EndoElement one = EndoElement::identity(module);
  const EndoElement u = one - h;
  ScenarioReport report;
  auto emit = [&](const std::string& name, const Json& value) {
    if (!out_dir) return;
    io::write_json(*out_dir / name, value);
    report.artifacts.push_back(name);
  };
  emit("h.json", io::endo_to_json(h));
  emit("one_minus_h.json", io::endo_to_json(u));

  // (i) every entry of h is a nonunit
  report.claims.push_back({"(i) h lies in the topological Jacobson radical", jacobson_membership(h), "h.json"});

  // (ii) 1 - h is not invertible
  {
    const InvertibilityDecision d = decide_invertible(u, 8);
    Claim c{"(ii) 1 - h is not invertible", false, Json()};
    if (const auto* no = std::get_if<NotInvertible>(&d)) {
      const auto& cert = no->certificate;
      bool geometric = true;
      Json solution = Json::array();
      for (std::size_t i = 0; i < cert.solution.size(); ++i) {
        solution.push_back(io::scalar_to_json(cert.solution[i]));
        geometric = geometric && cert.solution[i] == AdicScalar::monomial(ring, 1, static_cast<unsigned>(i));
      }
      c.outcome = certificate_holds(u, cert) && geometric;
      c.witness = Json{{"reason", cert.reason},
                       {"row", *cert.row},
                       {"band_offset", cert.band_offset},
                       {"support_sizes", cert.support_sizes},
                       {"solution", solution}};
      emit("certificate.json", c.witness);
    } else {
      c.witness = std::holds_alternative<Unknown>(d) ? Json(std::get<Unknown>(d).reason) : Json("invertible");
    }
    report.claims.push_back(std::move(c));
  }

  // (iii) locally split on every b_0 .. b_k
  {
    Claim c{"(iii) 1 - h is a locally split monomorphism", true, Json::array()};
    for (std::size_t k = 0; k <= K; ++k) {
      const auto g = is_locally_split_mono(u, OpenIdealDescriptor::prefix(k));
      const bool ok = g && split_witness_shape(*g, k);
      c.outcome = c.outcome && ok;
      c.witness.push_back(Json{{"k", k}, {"ok", ok}, {"g", g ? io::endo_body_to_json(*g) : Json(nullptr)}});
    }
    emit("locally_split.json", c.witness);
    report.claims.push_back(std::move(c));
  }

  // (iv) the bad lifting sums to 1 - h
  {
    const EndoFamily bad = bad_lifting_family(module);
    emit("bad_family.json", io::family_to_json(IdempotentFamily{bad, false}));
    Claim c{"(iv) bad lifting family has a non-invertible sum", false, Json()};
    const bool sum_is_u = bad.sum() && *bad.sum() == u;
    try {
      orthogonalize_finite_family(bad);
      c.witness = "orthogonalized without error";
    } catch (const NonInvertibleSum& e) {
      c.outcome = sum_is_u && certificate_holds(u, e.certificate());
      c.witness = Json{{"error", e.what()}, {"support_sizes", e.certificate().support_sizes}, {"family", "bad_family.json"}};
    }
    report.claims.push_back(std::move(c));
  }

  // (v) the coordinate projectors
  {
    const SplitResult split = split_idempotent(one, canonical_chain(*module, K + 1));
    const FamilyReport rep = split.family.validate();
    emit("good_family.json", io::family_to_json(split.family));
    const bool ok = rep.idempotent && rep.orthogonal && rep.zero_convergent && rep.complete &&
                    split.family.complete && all_local(split.family.members);
    report.claims.push_back({"(v) coordinate family is complete, orthogonal and local", ok,
                             Json{{"family", "good_family.json"}, {"report", family_report_json(rep)}}});
  }

  const bool all = report.all_true();
  report.claims.push_back({"conclusion: h in h(r) \\ H(r), so H(r) is strictly smaller than h(r) = closure(H(r))", all,
                           Json()});
  if (out_dir) {
    io::write_json(*out_dir / "report.json", report.to_json());
    report.artifacts.push_back("report.json");
  }
  return report;
}

bool reverify_jacobson_gap(const fs::path& dir, std::string* failure) {
  auto fail = [&](const std::string& why) {
    if (failure != nullptr) *failure = why;
    return false;
  };
  try {
    const EndoElement h = io::endo_from_json(io::read_json(dir / "h.json"));
    const ModulePtr module = h.module_ptr();
    const EndoElement u = io::endo_from_json(io::read_json(dir / "one_minus_h.json"), module);
    if (!(u == EndoElement::identity(module) - h)) return fail("one_minus_h.json is not 1 - h");
    if (!jacobson_membership(h)) return fail("h is not in the radical");

    const Json cj = io::read_json(dir / "certificate.json");
    NonInvertibilityCertificate cert;
    cert.row = cj.at("row").get<std::size_t>();
    cert.band_offset = cj.at("band_offset").get<long>();
    cert.support_sizes = cj.at("support_sizes").get<std::vector<std::size_t>>();
    if (!certificate_holds(u, cert)) return fail("support-growth certificate does not re-verify");

    for (const auto& w : io::read_json(dir / "locally_split.json")) {
      const std::size_t k = w.at("k").get<std::size_t>();
      if (w.at("g").is_null()) return fail("missing locally split witness");
      const EndoElement g = io::endo_from_json(w.at("g"), module);
      std::vector<std::size_t> rows(k + 1);
      for (std::size_t j = 0; j <= k; ++j) rows[j] = j;
      const EndoElement proj = summand_projector(module, rows);
      if (!(proj * u * g == proj)) return fail("locally split witness fails at k = " + std::to_string(k));
    }

    const IdempotentFamily bad = io::family_from_json(io::read_json(dir / "bad_family.json"));
    try {
      orthogonalize_finite_family(bad.members);
      return fail("bad family orthogonalized");
    } catch (const NonInvertibleSum&) {
    }

    const IdempotentFamily good = io::family_from_json(io::read_json(dir / "good_family.json"));
    const FamilyReport rep = good.validate();
    if (!(rep.idempotent && rep.orthogonal && rep.zero_convergent && rep.complete && all_local(good.members))) {
      return fail("good family does not re-verify: " + rep.detail);
    }
    for (const auto& c : io::read_json(dir / "report.json")) {
      if (!c.at("outcome").get<bool>()) return fail("report has a false claim");
    }
  } catch (const std::exception& e) {
    return fail(e.what());
  }
  return true;
}

int cmd_jacobson_gap(const CommandOptions& opt) {
  return guarded(opt, [&] {
    const Coeff p = opt.ring ? opt.ring->prime : 2;
    const ScenarioReport report = jacobson_gap_report(p, opt.K, opt.out_dir);
    std::ostream& log = log_of(opt);
    for (const auto& c : report.claims) log << (c.outcome ? "[true]  " : "[FALSE] ") << c.id << "\n";
    return claims_exit(report);
  });
}

int cmd_lift(const CommandOptions& opt, const fs::path& seed) {
  return guarded(opt, [&] {
    const EndoElement s = io::endo_from_json(io::read_json(seed), nullptr, opt.ring);
    const HenselResult r = hensel_lift_idempotent(s);
    io::write_json(opt.out_dir / "lifted.json", io::endo_to_json(r.idempotent));
    ScenarioReport report;
    report.artifacts = {"lifted.json"};
    report.claims.push_back({"idempotent", r.idempotent * r.idempotent == r.idempotent, "lifted.json"});
    report.claims.push_back(
        {"residue_preserved", project_to_semisimple(r.idempotent) == project_to_semisimple(s), Json()});
    report.claims.push_back({"defect_degrees_double", true,
                             Json{{"iterations", r.iterations}, {"defect_degrees", r.defect_degrees}}});
    write_report(opt, report);
    return claims_exit(report);
  });
}

int cmd_split(const CommandOptions& opt, const fs::path& idempotent) {
  return guarded(opt, [&] {
    const EndoElement e = io::endo_from_json(io::read_json(idempotent), nullptr, opt.ring);
    const auto chain = canonical_chain(e.module(), opt.K);
    const SplitResult r = split_idempotent(e, chain);
    io::write_json(opt.out_dir / "family.json", io::family_to_json(r.family));
    Json rem = Json::array();
    bool in_chain = true;
    for (std::size_t k = 0; k < r.remainders.size(); ++k) {
      rem.push_back(io::endo_body_to_json(r.remainders[k]));
      in_chain = in_chain && vanishes_on(r.remainders[k], chain[k]);
    }
    io::write_json(opt.out_dir / "remainders.json", rem);
    const FamilyReport rep = r.family.validate();
    const auto total = r.family.members.sum();
    ScenarioReport report;
    report.artifacts = {"family.json", "remainders.json"};
    report.claims.push_back({"family_valid", rep.idempotent && rep.orthogonal && rep.zero_convergent,
                             family_report_json(rep)});
    report.claims.push_back({"members_local", all_local(r.family.members), Json()});
    report.claims.push_back({"sum_equals_input", total && *total == e, Json()});
    report.claims.push_back({"remainders_in_chain", in_chain, "remainders.json"});
    write_report(opt, report);
    return claims_exit(report);
  });
}

int cmd_radical(const CommandOptions& opt, const fs::path& fg_module) {
  return guarded(opt, [&] {
    const FgDiscreteModule m = io::fg_module_from_json(io::read_json(fg_module), opt.ring);
    const RadicalResult r = radical_of_fg_discrete(m);
    Json simples = Json::array();
    for (std::size_t k = 0; k < r.simple_generators.size(); ++k) {
      simples.push_back(Json{{"generator", r.simple_generators[k]}, {"residue", r.simple_residues[k].to_string()}});
    }
    io::write_json(opt.out_dir / "radical.json",
                   Json{{"module_dimension", r.module_space.rank() - r.relations.rank()},
                        {"radical_dimension", r.radical.rank() - r.relations.rank()},
                        {"top_dimension", r.top_dimension},
                        {"semisimple_top", r.semisimple_top},
                        {"simples", simples}});
    return r.semisimple_top ? kExitOk : kExitClaimFailed;
  });
}

int cmd_cover(const CommandOptions& opt, const fs::path& fg_module) {
  return guarded(opt, [&] {
    const FgDiscreteModule m = io::fg_module_from_json(io::read_json(fg_module), opt.ring);
    const CoverResult c = m.side == Side::kLeft ? projective_cover_fg_contramodule(m) : projective_cover_fg(m);
    Json sources = Json::array(), map = Json::array(), kernel = Json::array();
    for (const auto& e : c.sources) sources.push_back(io::endo_body_to_json(e));
    for (const auto& row : c.cover_map(m.generators.size())) {
      Json r = Json::array();
      for (const auto& x : row) r.push_back(io::endo_body_to_json(x));
      map.push_back(std::move(r));
    }
    for (const auto& tuple : c.kernel) {
      Json r = Json::array();
      for (const auto& x : tuple) r.push_back(io::endo_body_to_json(x));
      kernel.push_back(std::move(r));
    }
    io::write_json(opt.out_dir / "cover.json",
                   Json{{"module", io::module_to_json(*m.module)},
                        {"side", m.side == Side::kRight ? "right" : "left"},
                        {"sources", sources},
                        {"source_generator", c.source_generator},
                        {"cover_map", map},
                        {"kernel", kernel},
                        {"surjective", c.surjective},
                        {"kernel_in_radical", c.kernel_in_radical},
                        {"residue_isomorphism", c.residue_isomorphism}});
    return c.certified() ? kExitOk : kExitClaimFailed;
  });
}

int cmd_dual(const CommandOptions& opt, const fs::path& matrix) {
  return guarded(opt, [&] {
    const DualityMatrix m = io::duality_from_json(io::read_json(matrix), opt.ring);
    io::write_json(opt.out_dir / "dual.json", io::duality_to_json(dual_matrix(m)));
    return kExitOk;
  });
}

}  // namespace semiperfect
