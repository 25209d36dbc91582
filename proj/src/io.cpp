#include "semiperfect/io.hpp"

#include <fstream>
#include <sstream>

#include "semiperfect/errors.hpp"

namespace semiperfect::io {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::size_t as_index(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError(std::string(what) + ": expected a nonnegative integer");
  }
  return j.get<std::size_t>();
}

const Json& as_array(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array");
  return j;
}

std::vector<SparseEntry> sparse_from_json(const RingDescriptor& ring, const Json& j) {
  std::vector<SparseEntry> out;
  for (const auto& e : as_array(j, "sparse")) {
    if (!e.is_array() || e.size() != 3) throw ParseError("sparse entry must be [row, col, value]");
    out.push_back(SparseEntry{as_index(e[0], "sparse row"), as_index(e[1], "sparse col"), scalar_from_json(ring, e[2])});
  }
  return out;
}

Json sparse_to_json(const std::vector<SparseEntry>& entries) {
  Json out = Json::array();
  for (const auto& s : entries) out.push_back(Json::array({s.row, s.col, scalar_to_json(s.value)}));
  return out;
}

std::vector<std::vector<AdicScalar>> grid_from_json(const RingDescriptor& ring, const Json& j) {
  std::vector<std::vector<AdicScalar>> rows;
  for (const auto& row : as_array(j, "matrix")) {
    std::vector<AdicScalar> r;
    for (const auto& x : as_array(row, "matrix row")) r.push_back(scalar_from_json(ring, x));
    if (!rows.empty() && r.size() != rows.front().size()) throw ParseError("matrix rows have different lengths");
    rows.push_back(std::move(r));
  }
  return rows;
}

Side side_from_json(const Json& j) {
  const std::string s = j.is_string() ? j.get<std::string>() : "";
  if (s == "right") return Side::kRight;
  if (s == "left") return Side::kLeft;
  throw ParseError("side must be \"right\" or \"left\"");
}

}  // namespace

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& value) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write " + tmp.string());
    out << value.dump(2) << "\n";
  }
  std::filesystem::rename(tmp, path);
}

RingDescriptor ring_from_json(const Json& j) {
  const Json& p = field(j, "p");
  if (!p.is_number_integer() || p.get<long long>() < 2) throw ParseError("ring: p must be an integer >= 2");
  if (j.contains("N")) {
    const Json& n = j.at("N");
    if (!n.is_number_integer() || n.get<long long>() < 1) throw ParseError("ring: N must be a positive integer");
    return RingDescriptor::truncated(p.get<Coeff>(), n.get<unsigned>());
  }
  return RingDescriptor::pattern(p.get<Coeff>());
}

Json ring_to_json(const RingDescriptor& ring) {
  Json j;
  j["p"] = ring.prime;
  if (ring.backend == Backend::kTruncated) j["N"] = ring.precision;
  return j;
}

AdicScalar scalar_from_json(const RingDescriptor& ring, const Json& j) {
  if (j.is_string()) return AdicScalar::parse(ring, j.get<std::string>());
  if (j.is_number_integer()) return AdicScalar::from_int(ring, j.get<long long>());
  throw ParseError("scalar must be a string or an integer");
}

ModulePtr module_from_json(const Json& j, const std::optional<RingDescriptor>& fallback) {
  if (!j.is_object()) throw ParseError("module descriptor must be an object");
  RingDescriptor ring;
  if (j.contains("ring")) {
    ring = ring_from_json(j.at("ring"));
  } else if (fallback) {
    ring = *fallback;
  } else {
    throw ParseError("module descriptor: missing ring (use --ring or --pattern)");
  }
  if (j.contains("pattern")) {
    if (j.at("pattern") != "free^omega") throw ParseError("module descriptor: only \"free^omega\" patterns exist");
    if (ring.backend != Backend::kPattern) ring = RingDescriptor::pattern(ring.prime);
    return std::make_shared<const DecomposedModule>(DecomposedModule::free_omega(ring));
  }
  std::vector<LocalModule> summands;
  for (const auto& s : as_array(field(j, "summands"), "summands")) {
    const Json& k = field(s, "torsion");
    if (!k.is_number_integer() || k.get<long long>() < 1) throw ValidationError("torsion exponent must be >= 1");
    summands.push_back(LocalModule::torsion(k.get<unsigned>()));
  }
  return std::make_shared<const DecomposedModule>(DecomposedModule::finite(ring, std::move(summands)));
}

Json module_to_json(const DecomposedModule& m) {
  Json j;
  j["ring"] = ring_to_json(m.ring());
  if (m.is_omega()) {
    j["pattern"] = "free^omega";
    return j;
  }
  j["summands"] = Json::array();
  for (const auto& s : m.summands()) j["summands"].push_back(Json{{"torsion", s.exponent}});
  return j;
}

ScalarMatrix presentation_from_json(const Json& j, const std::optional<RingDescriptor>& fallback) {
  RingDescriptor ring;
  const Json* body = &j;
  if (j.is_object()) {
    if (j.contains("ring")) {
      ring = ring_from_json(j.at("ring"));
    } else if (fallback) {
      ring = *fallback;
    } else {
      throw ParseError("presentation: missing ring");
    }
    body = &field(j, "matrix");
  } else if (fallback) {
    ring = *fallback;
  } else {
    throw ParseError("presentation: missing ring");
  }
  return ScalarMatrix::from_rows(ring, grid_from_json(ring, *body));
}

Json scalar_matrix_to_json(const ScalarMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

PatternMatrix pattern_from_json(const RingDescriptor& ring, const Json& j) {
  std::vector<Band> bands;
  if (j.contains("bands")) {
    for (const auto& b : as_array(j.at("bands"), "bands")) {
      const Json& off = field(b, "offset");
      if (!off.is_number_integer()) throw ParseError("band offset must be an integer");
      bands.push_back(Band{off.get<long>(), scalar_from_json(ring, field(b, "entry")),
                           b.contains("from") ? as_index(b.at("from"), "band from") : 0});
    }
  }
  std::vector<SparseEntry> sparse;
  if (j.contains("sparse")) sparse = sparse_from_json(ring, j.at("sparse"));
  return PatternMatrix(ring, bands, sparse);
}

Json pattern_to_json(const PatternMatrix& m) {
  Json j;
  j["bands"] = Json::array();
  for (const auto& b : m.bands()) {
    j["bands"].push_back(Json{{"offset", b.offset}, {"entry", scalar_to_json(b.entry)}, {"from", b.from}});
  }
  j["sparse"] = sparse_to_json(m.sparse_entries());
  return j;
}

EndoElement endo_from_json(const Json& j, ModulePtr module, const std::optional<RingDescriptor>& fallback) {
  if (!j.is_object()) throw ParseError("matrix must be an object");
  if (j.contains("module")) {
    ModulePtr declared = module_from_json(j.at("module"), fallback);
    if (module && !(*declared == *module)) throw ValidationError("matrix declared over a different module");
    if (!module) module = std::move(declared);
  }
  if (!module) throw ParseError("matrix: missing module");
  if (module->is_omega()) return EndoElement::from_pattern(module, pattern_from_json(module->ring(), j));
  const auto grid = grid_from_json(module->ring(), field(j, "entries"));
  if (grid.size() != module->size() || (!grid.empty() && grid.front().size() != module->size())) {
    throw ValidationError("matrix shape does not match the module");
  }
  return EndoElement::from_entries(module, grid);
}

Json endo_body_to_json(const EndoElement& x) {
  if (!x.is_finite()) return pattern_to_json(x.pattern());
  return Json{{"entries", scalar_matrix_to_json(x.to_matrix())}};
}

Json endo_to_json(const EndoElement& x) {
  Json j;
  j["module"] = module_to_json(x.module());
  const Json body = endo_body_to_json(x);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

IdempotentFamily family_from_json(const Json& j, const std::optional<RingDescriptor>& fallback) {
  ModulePtr module = module_from_json(field(j, "module"), fallback);
  std::vector<EndoElement> head;
  if (j.contains("members")) {
    for (const auto& m : as_array(j.at("members"), "members")) head.push_back(endo_from_json(m, module));
  }
  std::optional<TranslationTail> tail;
  if (j.contains("tail")) {
    const Json& t = j.at("tail");
    const RingDescriptor ring = module->ring();
    TranslationTail tt{PatternMatrix::zero(ring), PatternMatrix::sparse(ring, sparse_from_json(ring, field(t, "template"))),
                       t.contains("from") ? as_index(t.at("from"), "tail from") : 0};
    if (t.contains("constant")) tt.constant = pattern_from_json(ring, t.at("constant"));
    tail = std::move(tt);
  }
  const bool complete = j.contains("complete") && j.at("complete").is_boolean() && j.at("complete").get<bool>();
  return IdempotentFamily{EndoFamily(module, std::move(head), std::move(tail)), complete};
}

Json family_to_json(const IdempotentFamily& f) {
  Json j;
  j["module"] = module_to_json(*f.members.module_ptr());
  j["members"] = Json::array();
  for (const auto& x : f.members.head()) j["members"].push_back(endo_body_to_json(x));
  if (const auto& t = f.members.tail()) {
    Json tail;
    tail["template"] = sparse_to_json(t->templ.sparse_entries());
    tail["from"] = t->base;
    if (!t->constant.is_zero()) tail["constant"] = pattern_to_json(t->constant);
    j["tail"] = std::move(tail);
  }
  j["complete"] = f.complete;
  return j;
}

FgDiscreteModule fg_module_from_json(const Json& j, const std::optional<RingDescriptor>& fallback) {
  FgDiscreteModule m;
  m.module = module_from_json(field(j, "module"), fallback);
  for (const auto& g : as_array(field(j, "generators"), "generators")) m.generators.push_back(endo_from_json(g, m.module));
  if (j.contains("relations")) {
    for (const auto& rel : as_array(j.at("relations"), "relations")) {
      std::vector<EndoElement> parts;
      for (const auto& x : as_array(rel, "relation")) parts.push_back(endo_from_json(x, m.module));
      m.relations.push_back(std::move(parts));
    }
  }
  m.side = j.contains("side") ? side_from_json(j.at("side")) : Side::kRight;
  m.validate();
  return m;
}

Json fg_module_to_json(const FgDiscreteModule& m) {
  Json j;
  j["module"] = module_to_json(*m.module);
  j["generators"] = Json::array();
  for (const auto& g : m.generators) j["generators"].push_back(endo_body_to_json(g));
  j["relations"] = Json::array();
  for (const auto& rel : m.relations) {
    Json r = Json::array();
    for (const auto& x : rel) r.push_back(endo_body_to_json(x));
    j["relations"].push_back(std::move(r));
  }
  j["side"] = m.side == Side::kRight ? "right" : "left";
  return j;
}

FormalFamily formal_family_from_json(const RingDescriptor& ring, const Json& j) {
  if (j.is_array()) {
    std::vector<AdicScalar> e;
    for (const auto& x : j) e.push_back(scalar_from_json(ring, x));
    return FormalFamily::finite(ring, std::move(e));
  }
  std::vector<AdicScalar> prefix;
  if (j.contains("prefix")) {
    for (const auto& x : as_array(j.at("prefix"), "prefix")) prefix.push_back(scalar_from_json(ring, x));
  }
  std::optional<GeometricTail> tail;
  if (j.contains("tail")) {
    const Json& t = j.at("tail");
    tail = GeometricTail{as_index(field(t, "from"), "tail from"), scalar_from_json(ring, field(t, "first")),
                         static_cast<unsigned>(as_index(field(t, "ratio_power"), "ratio_power"))};
  }
  return FormalFamily::omega(ring, std::move(prefix), std::move(tail));
}

Json formal_family_to_json(const FormalFamily& f) {
  Json prefix = Json::array();
  for (const auto& x : f.prefix()) prefix.push_back(scalar_to_json(x));
  if (!f.is_omega()) return prefix;
  Json j{{"prefix", prefix}};
  if (const auto& t = f.tail()) {
    j["tail"] = Json{{"from", t->from}, {"first", scalar_to_json(t->first)}, {"ratio_power", t->ratio_power}};
  }
  return j;
}

DualityMatrix duality_from_json(const Json& j, const std::optional<RingDescriptor>& fallback) {
  if (!j.is_object()) throw ParseError("duality matrix must be an object");
  const std::string rows = j.contains("rows") ? j.at("rows").get<std::string>() : "Y";
  const std::string cols = j.contains("cols") ? j.at("cols").get<std::string>() : "X";
  Orientation orientation = Orientation::kContra;
  if (j.contains("orientation")) {
    const Json& o = j.at("orientation");
    if (o == "contra") {
      orientation = Orientation::kContra;
    } else if (o == "product") {
      orientation = Orientation::kProduct;
    } else {
      throw ParseError("orientation must be \"contra\" or \"product\"");
    }
  }
  if (j.contains("grid")) {
    ModulePtr module = module_from_json(field(j, "module"), fallback);
    DualityMatrix::EndoGrid grid;
    for (const auto& row : as_array(j.at("grid"), "grid")) {
      std::vector<EndoElement> r;
      for (const auto& x : as_array(row, "grid row")) r.push_back(endo_from_json(x, module));
      grid.push_back(std::move(r));
    }
    return DualityMatrix(std::move(grid), orientation, rows, cols);
  }
  RingDescriptor ring;
  if (j.contains("ring")) {
    ring = ring_from_json(j.at("ring"));
  } else if (fallback) {
    ring = *fallback;
  } else {
    throw ParseError("duality matrix: missing ring");
  }
  if (j.contains("entries")) {
    return DualityMatrix(ScalarMatrix::from_rows(ring, grid_from_json(ring, j.at("entries"))), orientation, rows, cols);
  }
  if (j.contains("row_families")) {
    DualityMatrix::RowList list;
    for (const auto& f : as_array(j.at("row_families"), "row_families")) list.push_back(formal_family_from_json(ring, f));
    return DualityMatrix(std::move(list), orientation, rows, cols);
  }
  if (j.contains("bands") || j.contains("sparse")) {
    return DualityMatrix(pattern_from_json(ring, j), orientation, rows, cols);
  }
  throw ParseError("duality matrix: expected entries, bands/sparse, row_families or grid");
}

Json duality_to_json(const DualityMatrix& m) {
  Json j;
  j["rows"] = m.row_label();
  j["cols"] = m.col_label();
  j["orientation"] = to_string(m.orientation());
  std::visit(
      [&](const auto& body) {
        using T = std::decay_t<decltype(body)>;
        if constexpr (std::is_same_v<T, ScalarMatrix>) {
          j["ring"] = ring_to_json(body.ring());
          j["entries"] = scalar_matrix_to_json(body);
        } else if constexpr (std::is_same_v<T, PatternMatrix>) {
          j["ring"] = ring_to_json(body.ring());
          const Json bands = pattern_to_json(body);
          for (const auto& [k, v] : bands.items()) j[k] = v;
        } else if constexpr (std::is_same_v<T, DualityMatrix::RowList>) {
          j["ring"] = body.empty() ? Json(nullptr) : ring_to_json(body.front().ring());
          j["row_families"] = Json::array();
          for (const auto& f : body) j["row_families"].push_back(formal_family_to_json(f));
        } else {
          j["module"] = body.empty() || body.front().empty() ? Json(nullptr)
                                                             : module_to_json(body.front().front().module());
          j["grid"] = Json::array();
          for (const auto& row : body) {
            Json r = Json::array();
            for (const auto& x : row) r.push_back(endo_body_to_json(x));
            j["grid"].push_back(std::move(r));
          }
        }
      },
      m.body());
  return j;
}

}  // namespace semiperfect::io
