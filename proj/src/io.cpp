#include "realrep/io.hpp"

#include <fstream>
#include <sstream>

namespace realrep {

Json complex_to_json(const Complex& z) {
  return Json::array({z.real(), z.imag()});
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    fail_io("complex value must be a two-element array [re, im]");
  }
  return Complex(j[0].get<double>(), j[1].get<double>());
}

Json matrix_to_json(const CMatrix& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      out.push_back(complex_to_json(m(i, j)));
    }
  }
  return out;
}

CMatrix matrix_from_json(const Json& j, int rows, int cols) {
  if (!j.is_array() || j.size() != static_cast<size_t>(rows) * cols) {
    fail_io("matrix entry count mismatch");
  }
  CMatrix m(rows, cols);
  size_t at = 0;
  for (int i = 0; i < rows; ++i) {
    for (int c = 0; c < cols; ++c) {
      m(i, c) = complex_from_json(j[at++]);
    }
  }
  return m;
}

Json group_to_json(const GroupTable& t) {
  Json out;
  if (!t.name.empty()) out["name"] = t.name;
  out["order"] = t.order;
  out["mul"] = t.mul;
  return out;
}

Json graded_group_to_json(const GradedGroup& gg) {
  Json out = group_to_json(gg.table);
  out["parity"] = gg.grading.parity;
  return out;
}

GroupTable group_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("mul")) {
    fail_io("group file requires `order` and `mul`");
  }
  const int order = j["order"].get<int>();
  std::vector<int> mul;
  const Json& m = j["mul"];
  if (!m.is_array()) fail_io("`mul` must be an array");
  if (!m.empty() && m[0].is_array()) {
    for (const auto& row : m) {
      for (const auto& v : row) mul.push_back(v.get<int>());
    }
  } else {
    for (const auto& v : m) mul.push_back(v.get<int>());
  }
  if (mul.size() != static_cast<size_t>(order) * order) {
    fail_io("`mul` must contain order^2 entries");
  }
  std::string name = j.value("name", std::string());
  try {
    return table_from_mul(order, std::move(mul), std::move(name));
  } catch (const Error& e) {
    fail_io(std::string("group file invalid: ") + e.what());
  }
}

GradedGroup graded_group_from_json(const Json& j) {
  GradedGroup gg;
  gg.table = group_from_json(j);
  if (!j.contains("parity")) fail_io("graded group requires `parity`");
  gg.grading.parity = j["parity"].get<std::vector<int>>();
  try {
    gg.validate();
  } catch (const Error& e) {
    fail_io(std::string("grading invalid: ") + e.what());
  }
  return gg;
}

Json rep_to_json(const Rep& r) {
  Json out;
  out["group"] = group_to_json(*r.group);
  out["dim"] = r.dim;
  Json mats = Json::array();
  for (const auto& m : r.mats) mats.push_back(matrix_to_json(m));
  out["mats"] = mats;
  return out;
}

Rep rep_from_json(const Json& j) {
  if (!j.contains("group") || !j.contains("dim") || !j.contains("mats")) {
    fail_io("rep file requires `group`, `dim`, `mats`");
  }
  Rep r;
  if (j["group"].is_string()) {
    r.group = std::make_shared<const GroupTable>(
        make_named(j["group"].get<std::string>()));
  } else {
    r.group = std::make_shared<const GroupTable>(group_from_json(j["group"]));
  }
  r.dim = j["dim"].get<int>();
  const Json& mats = j["mats"];
  if (!mats.is_array() || mats.size() != static_cast<size_t>(r.group->order)) {
    fail_io("rep file: one matrix per group element required");
  }
  for (const auto& m : mats) r.mats.push_back(matrix_from_json(m, r.dim, r.dim));
  return r;
}

namespace {

Json even_mats_to_json(const Rep& even) {
  Json mats = Json::array();
  for (const auto& m : even.mats) mats.push_back(matrix_to_json(m));
  return mats;
}

Rep even_mats_from_json(const Json& j, const ContextPtr& ctx, int dim) {
  if (!j.is_array() || j.size() != static_cast<size_t>(ctx->even->order)) {
    fail_io("structure file: one even matrix per even element required");
  }
  Rep even;
  even.group = ctx->even;
  even.dim = dim;
  for (const auto& m : j) even.mats.push_back(matrix_from_json(m, dim, dim));
  return even;
}

}  // namespace

Json structure_to_json(const GradedFormRep& s) {
  Json out;
  out["theory"] = s.theory == Theory::L ? "L" : "H";
  out["group"] = graded_group_to_json(s.ctx->gg);
  out["mats"] = even_mats_to_json(s.even);
  Json blocks = Json::array();
  for (int w : s.ctx->odd) blocks.push_back(matrix_to_json(s.B(w)));
  out["B"] = blocks;
  return out;
}

Json structure_to_json(const ARep& a) {
  Json out;
  out["theory"] = "A";
  out["group"] = graded_group_to_json(a.ctx->gg);
  out["mats"] = even_mats_to_json(a.even);
  Json blocks = Json::array();
  for (int w : a.ctx->odd) blocks.push_back(matrix_to_json(a.J(w)));
  out["J"] = blocks;
  return out;
}

LoadedStructure structure_from_json(const Json& j) {
  if (!j.contains("theory") || !j.contains("group") || !j.contains("mats")) {
    fail_io("structure file requires `theory`, `group`, `mats`");
  }
  const std::string theory = j["theory"].get<std::string>();
  LoadedStructure out;
  out.ctx = make_context(graded_group_from_json(j["group"]));
  const char* blocks_key = theory == "A" ? "J" : "B";
  if (!j.contains(blocks_key)) {
    fail_io(std::string("structure file requires `") + blocks_key + "` blocks");
  }
  const Json& blocks = j[blocks_key];
  if (!blocks.is_array() || blocks.size() != out.ctx->odd.size()) {
    fail_io("structure file: one odd block per odd element required");
  }
  int dim = 0;
  {
    const size_t n2 = j["mats"].empty() ? 0 : j["mats"][0].size();
    dim = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n2))));
    if (static_cast<size_t>(dim) * dim != n2 || dim == 0) {
      fail_io("structure file: even matrices must be square and nonempty");
    }
  }
  Rep even = even_mats_from_json(j["mats"], out.ctx, dim);
  std::vector<CMatrix> odd_blocks;
  for (const auto& b : blocks) odd_blocks.push_back(matrix_from_json(b, dim, dim));

  if (theory == "A") {
    out.theory = Theory::A;
    out.a = ARep{out.ctx, std::move(even), odd_blocks[0]};
    for (size_t i = 0; i < out.ctx->odd.size(); ++i) {
      out.family_residual =
          std::max(out.family_residual,
                   (out.a.J(out.ctx->odd[i]) - odd_blocks[i]).cwiseAbs().maxCoeff());
    }
  } else if (theory == "L" || theory == "H") {
    out.theory = theory == "L" ? Theory::L : Theory::H;
    out.s = GradedFormRep{out.ctx, out.theory, std::move(even), odd_blocks[0]};
    for (size_t i = 0; i < out.ctx->odd.size(); ++i) {
      out.family_residual =
          std::max(out.family_residual,
                   (out.s.B(out.ctx->odd[i]) - odd_blocks[i]).cwiseAbs().maxCoeff());
    }
  } else {
    fail_io("structure file: `theory` must be one of A, L, H");
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail_io("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream outf(path, std::ios::binary);
  if (!outf) fail_io("cannot write file: " + path);
  outf << content;
  if (!outf.good()) fail_io("write failed: " + path);
}

}  // namespace realrep
