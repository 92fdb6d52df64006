#include "symtensor/serialization.hpp"

#include "symtensor/tensor.hpp"

#include <fstream>
#include <sstream>

namespace symtensor {

namespace {

constexpr const char* kFormat = "symtensor/1";

Json double_matrix_to_json(const MatrixXd& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXd double_matrix_from_json(const Json& j) {
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) throw ParseError("empty matrix");
  const Index cols = static_cast<Index>(j.at(0).size());
  MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    if (static_cast<Index>(j.at(static_cast<size_t>(i)).size()) != cols)
      throw ParseError("ragged matrix rows");
    for (Index c = 0; c < cols; ++c)
      m(i, c) = j.at(static_cast<size_t>(i)).at(static_cast<size_t>(c)).get<double>();
  }
  return m;
}

Json class_list_to_json(const std::vector<VectorXq>& vecs) {
  Json out = Json::array();
  for (const auto& v : vecs) out.push_back(vector_to_json(v));
  return out;
}

std::vector<VectorXq> class_list_from_json(const Json& j) {
  std::vector<VectorXq> out;
  out.reserve(j.size());
  for (const auto& row : j) out.push_back(vector_from_json(row));
  return out;
}

Body rebuild_recipe(const OracleRecipe& recipe) {
  bool polarize = false;
  for (const auto& kv : recipe.params)
    if (kv.first == "polar") polarize = true;

  Body built = [&]() -> Body {
    if (recipe.kind == "omega2") return omega2_product(recipe.factors);
    if (recipe.kind == "pi_inj") return pi_inj_product(recipe.factors);
    if (recipe.kind == "eps_proj") return eps_proj_product(recipe.factors);
    if (recipe.kind == "section") {
      if (recipe.factors.size() != 1)
        throw ParseError("section recipe needs exactly one factor");
      std::vector<VectorXq> cols;
      for (const auto& kv : recipe.params) {
        if (kv.first.rfind("basis_col", 0) != 0) continue;
        std::vector<Rational> entries;
        std::string token;
        std::istringstream is(kv.second);
        while (std::getline(is, token, ',')) entries.push_back(parse_rational(token));
        VectorXq col(static_cast<Index>(entries.size()));
        for (Index i = 0; i < col.size(); ++i) col[i] = entries[static_cast<size_t>(i)];
        cols.push_back(std::move(col));
      }
      if (cols.empty()) throw ParseError("section recipe is missing its basis");
      MatrixXq basis(cols[0].size(), static_cast<Index>(cols.size()));
      for (Index j = 0; j < basis.cols(); ++j) basis.col(j) = cols[static_cast<size_t>(j)];
      return section_body(recipe.factors[0], basis);
    }
    throw ParseError("unknown oracle recipe kind '" + recipe.kind + "'");
  }();
  return polarize ? polar(built) : built;
}

}  // namespace

Json vector_to_json(const VectorXq& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(format_rational(v[i]));
  return out;
}

VectorXq vector_from_json(const Json& j) {
  VectorXq v(static_cast<Index>(j.size()));
  Index i = 0;
  for (const auto& entry : j) v[i++] = parse_rational(entry.get<std::string>());
  return v;
}

Json matrix_to_json(const MatrixXq& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(format_rational(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXq matrix_from_json(const Json& j) {
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) throw ParseError("empty matrix");
  const Index cols = static_cast<Index>(j.at(0).size());
  MatrixXq m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const auto& row = j.at(static_cast<size_t>(i));
    if (static_cast<Index>(row.size()) != cols) throw ParseError("ragged matrix rows");
    for (Index c = 0; c < cols; ++c)
      m(i, c) = parse_rational(row.at(static_cast<size_t>(c)).get<std::string>());
  }
  return m;
}

Json provenance_to_json(const Provenance& prov) {
  Json out;
  out["kind"] = prov.kind;
  Json attrs = Json::array();
  for (const auto& kv : prov.attrs) attrs.push_back(Json::array({kv.first, kv.second}));
  out["attrs"] = std::move(attrs);
  return out;
}

Json body_to_json(const Body& body) {
  Json out;
  out["format"] = kFormat;
  out["dim"] = body.dim();
  switch (body.kind()) {
    case BodyKind::VPolytope:
      out["kind"] = "vpolytope";
      out["generators"] = class_list_to_json(body.as_v().generators());
      return out;
    case BodyKind::HPolytope:
      out["kind"] = "hpolytope";
      out["normals"] = class_list_to_json(body.as_h().normals());
      return out;
    case BodyKind::Ellipsoid: {
      const auto& e = body.as_e();
      out["kind"] = "ellipsoid";
      out["exact"] = e.exact();
      if (e.exact())
        out["q"] = matrix_to_json(e.q_exact());
      else
        out["q"] = double_matrix_to_json(e.q());
      return out;
    }
    case BodyKind::Oracle: {
      const auto& o = body.as_oracle();
      if (!o.recipe)
        throw RepresentationError("oracle body without a recipe cannot be serialized");
      out["kind"] = "oracle";
      Json recipe;
      recipe["kind"] = o.recipe->kind;
      Json factors = Json::array();
      for (const auto& f : o.recipe->factors) factors.push_back(body_to_json(f));
      recipe["factors"] = std::move(factors);
      Json params = Json::array();
      for (const auto& kv : o.recipe->params) params.push_back(Json::array({kv.first, kv.second}));
      recipe["params"] = std::move(params);
      out["recipe"] = std::move(recipe);
      out["provenance"] = provenance_to_json(o.prov);
      return out;
    }
  }
  throw Error("unknown body kind");
}

Body body_from_json(const Json& j) {
  if (j.contains("format") && j.at("format").get<std::string>() != kFormat)
    throw ParseError("unsupported body format '" + j.at("format").get<std::string>() + "'");
  const std::string kind = j.at("kind").get<std::string>();
  const Index dim = j.at("dim").get<Index>();
  if (kind == "vpolytope")
    return Body(VPolytope(dim, class_list_from_json(j.at("generators"))));
  if (kind == "hpolytope")
    return Body(HPolytope(dim, class_list_from_json(j.at("normals"))));
  if (kind == "ellipsoid") {
    if (j.at("exact").get<bool>()) return Body(Ellipsoid(dim, matrix_from_json(j.at("q"))));
    return Body(Ellipsoid(dim, double_matrix_from_json(j.at("q"))));
  }
  if (kind == "oracle") {
    OracleRecipe recipe;
    const Json& r = j.at("recipe");
    recipe.kind = r.at("kind").get<std::string>();
    for (const auto& f : r.at("factors")) recipe.factors.push_back(body_from_json(f));
    for (const auto& kv : r.at("params"))
      recipe.params.emplace_back(kv.at(0).get<std::string>(), kv.at(1).get<std::string>());
    Body rebuilt = rebuild_recipe(recipe);
    if (rebuilt.dim() != dim) throw ParseError("recipe dimension disagrees with the header");
    return rebuilt;
  }
  throw ParseError("unknown body kind '" + kind + "'");
}

std::string body_to_string(const Body& body) { return body_to_json(body).dump(2); }

Body body_from_string(const std::string& text) {
  return body_from_json(Json::parse(text));
}

void save_body(const Body& body, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << body_to_string(body) << "\n";
}

Body load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return body_from_json(Json::parse(text));
}

}  // namespace symtensor
