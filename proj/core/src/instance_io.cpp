#include "csa/instance_io.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "csa/apps.hpp"
#include "csa/errors.hpp"

namespace csa {

using json = nlohmann::ordered_json;

namespace {

Rational canonical_rational(const json& j) {
  if (!j.is_string()) throw InputError("rational entries must be strings");
  const std::string s = j.get<std::string>();
  Rational q = parse_rational(s);
  if (to_string(q) != s) throw InputError("rational is not in canonical form: " + s);
  return q;
}

json elem_json(const FieldElem& x) {
  json a = json::array();
  for (const auto& q : x) a.push_back(to_string(q));
  return a;
}

FieldElem elem_from(const json& j, std::size_t d) {
  if (!j.is_array() || j.size() != d) throw InputError("field element must be an array of " + std::to_string(d));
  FieldElem x;
  for (const auto& e : j) x.push_back(canonical_rational(e));
  return x;
}

json field_json(const FieldDescriptor& f) {
  json j;
  switch (f.kind) {
    case FieldDescriptor::Kind::rationals:
      j["kind"] = "rationals";
      break;
    case FieldDescriptor::Kind::quadratic:
      j["kind"] = "quadratic";
      j["D"] = f.D;
      break;
    case FieldDescriptor::Kind::general: {
      j["kind"] = "general";
      json mp = json::array();
      for (const auto& c : f.min_poly) mp.push_back(c.get_str());
      j["min_poly"] = mp;
      json ib = json::array();
      for (const auto& row : f.integral_basis) ib.push_back(elem_json(row));
      j["integral_basis"] = ib;
      j["discriminant"] = f.discriminant.get_str();
      break;
    }
  }
  return j;
}

Integer integer_from(const json& j) {
  if (!j.is_string()) throw InputError("integers must be given as strings");
  Integer z;
  if (z.set_str(j.get<std::string>(), 10) != 0) throw InputError("malformed integer: " + j.get<std::string>());
  return z;
}

FieldDescriptor field_from(const json& j) {
  if (!j.is_object() || !j.contains("kind")) throw InputError("field descriptor needs a kind");
  FieldDescriptor f;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rationals") {
    f.kind = FieldDescriptor::Kind::rationals;
  } else if (kind == "quadratic") {
    f.kind = FieldDescriptor::Kind::quadratic;
    f.D = j.at("D").get<long>();
  } else if (kind == "general") {
    f.kind = FieldDescriptor::Kind::general;
    for (const auto& c : j.at("min_poly")) f.min_poly.push_back(integer_from(c));
    const std::size_t d = f.min_poly.empty() ? 0 : f.min_poly.size() - 1;
    for (const auto& row : j.at("integral_basis")) f.integral_basis.push_back(elem_from(row, d));
    f.discriminant = integer_from(j.at("discriminant"));
  } else {
    throw InputError("unknown field kind: " + kind);
  }
  return f;
}

json kmatrix_json(const KMatrix& M) {
  json rows = json::array();
  for (std::size_t i = 0; i < M.rows; ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < M.cols; ++j) r.push_back(elem_json(M(i, j)));
    rows.push_back(r);
  }
  return rows;
}

KMatrix kmatrix_from(const json& j, const NumberField& K, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw InputError("image must have n rows");
  KMatrix M(K, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != n) throw InputError("image must have n columns");
    for (std::size_t k = 0; k < n; ++k) M(i, k) = elem_from(j[i][k], K.degree());
  }
  return M;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON: ") + e.what());
  }
}

std::size_t nesting(const json& j) {
  if (!j.is_array()) return 0;
  std::size_t d = 1;
  for (const auto& e : j) d = std::max(d, 1 + nesting(e));
  return d;
}

// Objects and deep arrays one entry per line; arrays of depth at most two
// (field elements, matrix rows) stay on one line.
void pretty(const json& j, std::string& out, int indent) {
  const std::string pad(indent, ' '), inner(indent + 1, ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    std::size_t k = 0;
    for (auto it = j.begin(); it != j.end(); ++it, ++k) {
      out += inner + json(it.key()).dump() + ": ";
      pretty(it.value(), out, indent + 1);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "}";
  } else if (j.is_array() && !j.empty() && (nesting(j) > 2 || j[0].is_object())) {
    out += "[\n";
    for (std::size_t k = 0; k < j.size(); ++k) {
      out += inner;
      pretty(j[k], out, indent + 1);
      out += k + 1 < j.size() ? ",\n" : "\n";
    }
    out += pad + "]";
  } else {
    out += j.dump(-1, ' ', false);
  }
}

std::string pretty(const json& j) {
  std::string out;
  pretty(j, out, 0);
  return out + "\n";
}

// Uniform enough for instance generation and reproducible across platforms.
long draw(std::mt19937_64& rng, long lo, long hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<long>(rng() % span);
}

}  // namespace

Algebra Instance::algebra(bool check_associativity) const {
  return Algebra(NumberField::make(field), dim, constants, check_associativity);
}

Instance instance_from_algebra(const Algebra& A) {
  Instance inst;
  inst.field = A.field().descriptor();
  inst.dim = A.dim();
  inst.constants = A.constants();
  return inst;
}

Algebra standard_matrix_algebra(const NumberField& K, std::size_t n) {
  const std::size_t m = n * n;
  std::vector<FieldElem> gamma(m * m * m, K.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) gamma[((i * n + j) * m + (j * n + l)) * m + (i * n + l)] = K.one();
  return Algebra(K, m, std::move(gamma), false);
}

Instance gen_instance(const GenOptions& opt) {
  if (opt.n < 1) throw InputError("n must be at least 1");
  if (opt.entry_bound < 1) throw InputError("entry bound must be at least 1");
  const NumberField K = NumberField::make(opt.field);
  const std::size_t m = opt.n * opt.n, d = K.degree();
  const Algebra E = standard_matrix_algebra(K, opt.n);
  std::mt19937_64 rng(opt.seed);

  std::vector<FieldElem> T(m * m, K.zero());
  if (opt.identity) {
    for (std::size_t i = 0; i < m; ++i) T[i * m + i] = K.one();
  } else {
    do {
      for (auto& x : T)
        for (std::size_t l = 0; l < d; ++l) {
          const long p = draw(rng, -opt.entry_bound, opt.entry_bound);
          const long q = draw(rng, 1, opt.entry_bound);
          x[l] = Rational(p, q);
          x[l].canonicalize();
        }
    } while (rank(restrict_scalars(K, m, m, T)) != m * d);
  }
  std::vector<Element> basis;
  for (std::size_t k = 0; k < m; ++k)
    basis.push_back(E.from_kcoords(std::vector<FieldElem>(T.begin() + k * m, T.begin() + (k + 1) * m)));
  Instance inst = instance_from_algebra(rebase(E, basis));
  if (opt.hidden_witness) inst.hidden_witness = T;
  return inst;
}

std::string write_instance(const Instance& inst) {
  json j;
  j["format"] = kInstanceFormat;
  j["field"] = field_json(inst.field);
  j["dim"] = inst.dim;
  const std::size_t m = inst.dim;
  json sc = json::array();
  for (std::size_t i = 0; i < m; ++i) {
    json a = json::array();
    for (std::size_t jj = 0; jj < m; ++jj) {
      json b = json::array();
      for (std::size_t k = 0; k < m; ++k) b.push_back(elem_json(inst.constants[(i * m + jj) * m + k]));
      a.push_back(b);
    }
    sc.push_back(a);
  }
  j["structure_constants"] = sc;
  if (inst.hidden_witness) {
    json t = json::array();
    for (std::size_t k = 0; k < m; ++k) {
      json row = json::array();
      for (std::size_t l = 0; l < m; ++l) row.push_back(elem_json((*inst.hidden_witness)[k * m + l]));
      t.push_back(row);
    }
    j["hidden_witness"] = {{"change_of_basis", t}};
  }
  return pretty(j);
}

Instance read_instance(const std::string& text) {
  const json j = parse_json(text);
  try {
    if (!j.is_object() || j.value("format", "") != kInstanceFormat)
      throw InputError(std::string("expected format ") + kInstanceFormat);
    Instance inst;
    inst.field = field_from(j.at("field"));
    const std::size_t d = NumberField::make(inst.field).degree();
    inst.dim = j.at("dim").get<std::size_t>();
    const std::size_t m = inst.dim;
    if (m == 0) throw InputError("dimension must be positive");
    const json& sc = j.at("structure_constants");
    if (!sc.is_array() || sc.size() != m) throw InputError("structure constants must be m x m x m");
    inst.constants.resize(m * m * m);
    for (std::size_t i = 0; i < m; ++i) {
      if (!sc[i].is_array() || sc[i].size() != m) throw InputError("structure constants must be m x m x m");
      for (std::size_t jj = 0; jj < m; ++jj) {
        if (!sc[i][jj].is_array() || sc[i][jj].size() != m) throw InputError("structure constants must be m x m x m");
        for (std::size_t k = 0; k < m; ++k) inst.constants[(i * m + jj) * m + k] = elem_from(sc[i][jj][k], d);
      }
    }
    if (j.contains("hidden_witness")) {
      const json& t = j.at("hidden_witness").at("change_of_basis");
      if (!t.is_array() || t.size() != m) throw InputError("change of basis must be m x m");
      std::vector<FieldElem> T;
      for (const auto& row : t) {
        if (!row.is_array() || row.size() != m) throw InputError("change of basis must be m x m");
        for (const auto& x : row) T.push_back(elem_from(x, d));
      }
      inst.hidden_witness = std::move(T);
    }
    return inst;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed instance: ") + e.what());
  }
}

WitnessFile witness_from_report(const Algebra& A, const SplitReport& report) {
  WitnessFile w;
  w.n = report.iso.n;
  w.rank_one = A.kcoords(report.witness.C);
  w.images = report.iso.images;
  for (const auto& lv : report.stats.levels) w.order_discriminants.push_back(lv.discriminant);
  w.levels = report.stats.levels;
  w.short_checked = report.stats.short_checked;
  w.short_violations = report.stats.short_violations;
  return w;
}

std::string write_witness(const WitnessFile& w) {
  json j;
  j["format"] = kWitnessFormat;
  j["n"] = w.n;
  json c = json::array();
  for (const auto& x : w.rank_one) c.push_back(elem_json(x));
  j["rank_one"] = c;
  json im = json::array();
  for (const auto& M : w.images) im.push_back(kmatrix_json(M));
  j["images"] = im;
  json disc = json::array();
  for (const auto& D : w.order_discriminants) disc.push_back(D.get_str());
  j["order_discriminants"] = disc;
  json levels = json::array();
  for (const auto& lv : w.levels) {
    json l;
    l["n"] = lv.n;
    l["initial_discriminant"] = lv.initial_discriminant.get_str();
    l["discriminant"] = lv.discriminant.get_str();
    l["enlargements"] = lv.enlargements;
    l["precision_bits"] = lv.precision_bits;
    l["rounding_bits"] = lv.rounding_bits;
    l["samples"] = lv.samples;
    l["lll_ratio"] = lv.ratio;
    l["c_m"] = lv.c_m;
    l["certified"] = lv.certified;
    l["found_in"] = lv.found_in;
    l["found_rank"] = lv.found_rank;
    l["shell"] = lv.shell;
    l["visited"] = lv.visited;
    l["nodes"] = lv.nodes;
    l["norms"] = lv.norms;
    levels.push_back(l);
  }
  j["statistics"] = {{"levels", levels},
                     {"short_checked", w.short_checked},
                     {"short_violations", w.short_violations}};
  return pretty(j);
}

WitnessFile read_witness(const std::string& text, const NumberField& K) {
  const json j = parse_json(text);
  try {
    if (!j.is_object() || j.value("format", "") != kWitnessFormat)
      throw InputError(std::string("expected format ") + kWitnessFormat);
    WitnessFile w;
    w.n = j.at("n").get<std::size_t>();
    for (const auto& x : j.at("rank_one")) w.rank_one.push_back(elem_from(x, K.degree()));
    for (const auto& M : j.at("images")) w.images.push_back(kmatrix_from(M, K, w.n));
    if (j.contains("order_discriminants"))
      for (const auto& D : j.at("order_discriminants")) w.order_discriminants.push_back(integer_from(D));
    return w;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed witness: ") + e.what());
  }
}

VerifyResult verify_witness(const Algebra& A, const WitnessFile& w) {
  if (w.n != A.require_degree()) return {false, "shape", "witness degree does not match the algebra"};
  if (w.rank_one.size() != A.dim()) return {false, "shape", "witness has the wrong number of coordinates"};
  return verify(A, A.from_kcoords(w.rank_one), w.images);
}

std::string write_isomorphism(const Algebra& B, const IsoResult& r) {
  json j;
  j["format"] = "csa-isomorphism/1";
  json imgs = json::array();
  for (const auto& x : r.sigma) {
    json e = json::array();
    for (const auto& c : B.kcoords(x)) e.push_back(elem_json(c));
    imgs.push_back(e);
  }
  j["images"] = imgs;
  j["statistics"] = {{"left_steps", r.left_steps},
                     {"right_steps", r.right_steps},
                     {"commuting_checks", r.commuting_checks},
                     {"rank_checks", r.rank_checks}};
  return pretty(j);
}

std::string write_zero_divisor(const Algebra& A, const ZeroDivisorResult& r) {
  json j;
  j["format"] = "csa-zero-divisor/1";
  json y = json::array();
  for (const auto& c : A.kcoords(r.y)) y.push_back(elem_json(c));
  j["element"] = y;
  j["rank"] = r.rank;
  return pretty(j);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
  if (!out) throw InputError("write failed: " + path);
}

}  // namespace csa
