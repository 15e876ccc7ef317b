#include "pkit/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pkit::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

cplx parse_scalar(const json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  parse_error(where + ": expected a number or [re, im]");
}

CMatrix parse_matrix(const json& v, const std::string& name) {
  if (!v.is_array()) parse_error(name + ": expected an array of rows");
  const Index rows = static_cast<Index>(v.size());
  Index cols = -1;
  for (Index i = 0; i < rows; ++i) {
    const json& row = v[static_cast<std::size_t>(i)];
    const std::string where = name + " row " + std::to_string(i + 1);
    if (!row.is_array()) parse_error(where + ": expected an array");
    const Index c = static_cast<Index>(row.size());
    if (cols < 0) cols = c;
    if (c != cols)
      parse_error(where + " has " + std::to_string(c) + " entries, expected " +
                  std::to_string(cols));
  }
  CMatrix m(rows, std::max<Index>(cols, 0));
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < m.cols(); ++j)
      m(i, j) = parse_scalar(v[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                             name + "[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]");
  if (!m.allFinite()) parse_error(name + ": non-finite entry");
  return m;
}

const json& require(const json& doc, const char* key) {
  if (!doc.contains(key)) parse_error(std::string("missing field \"") + key + "\"");
  return doc.at(key);
}

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  return json(v).dump();
}

std::string format_entry(cplx v) {
  if (v.imag() == 0.0) return format_number(v.real());
  return "[" + format_number(v.real()) + ", " + format_number(v.imag()) + "]";
}

void write_matrix(std::ostringstream& out, const CMatrix& m, const std::string& indent) {
  if (m.rows() == 0) {
    out << "[]";
    return;
  }
  out << "[\n";
  for (Index i = 0; i < m.rows(); ++i) {
    out << indent << "  [";
    for (Index j = 0; j < m.cols(); ++j) out << (j ? ", " : "") << format_entry(m(i, j));
    out << "]" << (i + 1 < m.rows() ? "," : "") << "\n";
  }
  out << indent << "]";
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ProblemFile parse_problem(const std::string& text, const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_error("top level must be an object");

  std::string name, description;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) parse_error("name: expected a string");
    name = doc["name"].get<std::string>();
  }
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) parse_error("description: expected a string");
    description = doc["description"].get<std::string>();
  }

  const CMatrix gram = parse_matrix(require(doc, "gram"), "gram");
  const Index n = gram.rows();
  if (gram.cols() != n && !(n == 0 && gram.cols() == 0))
    parse_error("gram: expected a square matrix");
  const json& a = require(doc, "A");
  const bool relation = a.is_object();

  std::string form = relation ? "general" : "bounded";
  if (doc.contains("form")) {
    if (!doc["form"].is_string()) parse_error("form: expected \"bounded\" or \"general\"");
    form = doc["form"].get<std::string>();
    if (form != "bounded" && form != "general")
      parse_error("form: expected \"bounded\" or \"general\"");
  }
  if (relation && form == "bounded") parse_error("A: a relation requires form \"general\"");

  CMatrix gamma = parse_matrix(require(doc, "gamma0"), "gamma0");
  if (gamma.rows() == 0 && n > 0) parse_error("gamma0: expected " + std::to_string(n) + " rows");
  if (gamma.rows() != n)
    parse_error("gamma0 has " + std::to_string(gamma.rows()) + " rows, expected " +
                std::to_string(n));

  try {
    PontryaginSpace space = n == 0 ? PontryaginSpace() : PontryaginSpace(gram, tol);
    if (form == "bounded") {
      CMatrix op = parse_matrix(a, "A");
      if (op.rows() != n || (n > 0 && op.cols() != n))
        parse_error("A: expected a " + std::to_string(n) + " x " + std::to_string(n) + " matrix");
      if (n == 0) op.resize(0, 0);
      return {name, description, Realization::bounded(std::move(space), op, gamma, tol)};
    }
    const cplx z0 = parse_scalar(require(doc, "z0"), "z0");
    LinearRelation rel = relation
        ? LinearRelation(space, parse_matrix(require(a, "M"), "A.M"),
                         parse_matrix(require(a, "N"), "A.N"), tol)
        : from_operator(parse_matrix(a, "A"), space);
    if (doc.contains("q_z0_adj")) {
      const CMatrix c = parse_matrix(doc["q_z0_adj"], "q_z0_adj");
      return {name, description,
              Realization::general(std::move(space), std::move(rel), gamma, z0, c, tol)};
    }
    return {name, description,
            Realization::general(std::move(space), std::move(rel), gamma, z0, tol)};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    parse_error(std::string("invalid problem (") + std::string(to_string(e.code())) + "): " +
                e.what());
  }
}

ProblemFile read_problem(const std::string& path, const Tolerances& tol) {
  return parse_problem(read_text(path), tol);
}

std::string write_problem(const ProblemFile& p) {
  const Realization& r = p.realization;
  std::ostringstream out;
  out << "{\n";
  out << "  \"name\": " << json(p.name).dump() << ",\n";
  out << "  \"description\": " << json(p.description).dump() << ",\n";
  out << "  \"form\": \"" << (r.form() == Form::Bounded ? "bounded" : "general") << "\",\n";
  out << "  \"gram\": ";
  write_matrix(out, r.space().gram(), "  ");
  out << ",\n  \"A\": ";
  if (r.form() == Form::Bounded) {
    write_matrix(out, r.op_matrix(), "  ");
  } else {
    out << "{\n    \"M\": ";
    write_matrix(out, r.op().domain_part(), "    ");
    out << ",\n    \"N\": ";
    write_matrix(out, r.op().value_part(), "    ");
    out << "\n  }";
  }
  out << ",\n  \"gamma0\": ";
  write_matrix(out, r.gamma(), "  ");
  if (r.form() == Form::General) {
    out << ",\n  \"z0\": [" << format_number(r.ref_point().real()) << ", "
        << format_number(r.ref_point().imag()) << "]";
    out << ",\n  \"q_z0_adj\": ";
    write_matrix(out, r.ref_value_adj(), "  ");
  }
  out << "\n}\n";
  return out.str();
}

Subspace parse_subspace(const std::string& text, const PontryaginSpace& space,
                        const Tolerances& tol) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    parse_error(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) parse_error("subspace file: top level must be an object");
  const CMatrix basis = parse_matrix(require(doc, "basis"), "basis");
  if (basis.rows() != space.dim())
    parse_error("basis has " + std::to_string(basis.rows()) + " rows, expected " +
                std::to_string(space.dim()));
  try {
    return Subspace(space, basis, tol);
  } catch (const Error& e) {
    parse_error(std::string("invalid subspace: ") + e.what());
  }
}

Subspace read_subspace(const std::string& path, const PontryaginSpace& space,
                       const Tolerances& tol) {
  return parse_subspace(read_text(path), space, tol);
}

std::string format_real(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

std::string format_complex(cplx v) {
  if (v.imag() == 0.0) return format_real(v.real());
  const std::string im = format_real(std::abs(v.imag()));
  return format_real(v.real()) + (v.imag() < 0 ? "-" : "+") + im + "i";
}

}  // namespace pkit::io
