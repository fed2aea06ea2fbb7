#include "tangle/stateio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tangle {

namespace {

using nlohmann::json;

// Cursor over a parsed document that tracks its path for diagnostics.
struct Node {
  const json* value;
  std::string path;

  Node child(const std::string& key) const {
    if (!value->is_object()) {
      throw ParseError(path, "expected an object");
    }
    auto it = value->find(key);
    if (it == value->end()) {
      throw ParseError(path + "." + key, "missing required field");
    }
    return {&*it, path + "." + key};
  }

  Node element(std::size_t index) const {
    return {&(*value)[index], path + "[" + std::to_string(index) + "]"};
  }

  double as_double() const {
    if (!value->is_number()) {
      throw ParseError(path, "expected a number");
    }
    return value->get<double>();
  }

  int as_int() const {
    if (!value->is_number_integer()) {
      throw ParseError(path, "expected an integer");
    }
    return value->get<int>();
  }

  std::string as_string() const {
    if (!value->is_string()) {
      throw ParseError(path, "expected a string");
    }
    return value->get<std::string>();
  }

  std::size_t array_size() const {
    if (!value->is_array()) {
      throw ParseError(path, "expected an array");
    }
    return value->size();
  }
};

std::vector<double> read_real_array(const Node& node) {
  const std::size_t size = node.array_size();
  std::vector<double> out(size);
  for (std::size_t i = 0; i < size; ++i) out[i] = node.element(i).as_double();
  return out;
}

std::vector<Complex> read_complex_arrays(const Node& parent,
                                         const std::string& re_key,
                                         const std::string& im_key) {
  const auto re = read_real_array(parent.child(re_key));
  const auto im = read_real_array(parent.child(im_key));
  if (re.size() != im.size()) {
    throw ParseError(parent.path + "." + im_key,
                     "length differs from " + re_key);
  }
  std::vector<Complex> out(re.size());
  for (std::size_t i = 0; i < re.size(); ++i) out[i] = {re[i], im[i]};
  return out;
}

Complex read_complex_scalar(const Node& parent, const std::string& re_key,
                            const std::string& im_key) {
  return {parent.child(re_key).as_double(), parent.child(im_key).as_double()};
}

WClassSpec parse_w_class(const Node& root) {
  WClassSpec spec;
  spec.a = read_complex_scalar(root, "a_re", "a_im");
  spec.b = read_complex_arrays(root, "b_re", "b_im");
  try {
    spec.validate();
  } catch (const std::invalid_argument& err) {
    throw ParseError(root.path, err.what());
  }
  return spec;
}

MixedFamilySpec parse_mixed_w(const Node& root) {
  MixedFamilySpec spec;
  spec.p = root.child("p").as_double();
  if (!(spec.p >= 0.0 && spec.p <= 1.0)) {
    throw ParseError(root.path + ".p", "value " + std::to_string(spec.p) +
                                           " outside [0, 1]");
  }
  spec.w = parse_w_class(root);
  return spec;
}

PartitionedWSpec parse_partitioned_w(const Node& root) {
  PartitionedWSpec spec;
  spec.a_tilde = read_complex_scalar(root, "a_re", "a_im");
  const Node blocks = root.child("blocks");
  const std::size_t count = blocks.array_size();
  for (std::size_t i = 0; i < count; ++i) {
    const Node entry = blocks.element(i);
    PartitionedWBlock block;
    block.name = entry.child("name").as_string();
    block.amplitudes = read_complex_arrays(entry, "re", "im");
    spec.blocks.push_back(std::move(block));
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& err) {
    throw ParseError(root.path, err.what());
  }
  return spec;
}

GhzSpec parse_ghz(const Node& root) {
  GhzSpec spec;
  spec.n_qubits = root.child("n").as_int();
  if (spec.n_qubits < 1 || spec.n_qubits > kMaxQubits) {
    throw ParseError(root.path + ".n", "qubit count out of range");
  }
  return spec;
}

DensePureSpec parse_dense_pure(const Node& root) {
  const int n = root.child("n").as_int();
  if (n < 1 || n > kMaxQubits) {
    throw ParseError(root.path + ".n", "qubit count out of range");
  }
  const auto amps = read_complex_arrays(root, "re", "im");
  if (amps.size() != (std::size_t(1) << n)) {
    throw ParseError(root.path + ".re", "expected 2^n amplitudes");
  }
  Vector vec(amps.size());
  for (std::size_t i = 0; i < amps.size(); ++i) vec(i) = amps[i];
  try {
    return DensePureSpec{PureState(n, std::move(vec))};
  } catch (const std::invalid_argument& err) {
    throw ParseError(root.path, err.what());
  }
}

DenseMixedSpec parse_dense_mixed(const Node& root) {
  const int n = root.child("n").as_int();
  if (n < 1 || n > kMaxQubits) {
    throw ParseError(root.path + ".n", "qubit count out of range");
  }
  const Eigen::Index dim = Eigen::Index(1) << n;
  const Node re = root.child("re");
  const Node im = root.child("im");
  if (re.array_size() != static_cast<std::size_t>(dim)) {
    throw ParseError(re.path, "expected 2^n rows");
  }
  if (im.array_size() != static_cast<std::size_t>(dim)) {
    throw ParseError(im.path, "expected 2^n rows");
  }
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const auto re_row = read_real_array(re.element(i));
    const auto im_row = read_real_array(im.element(i));
    if (re_row.size() != static_cast<std::size_t>(dim) ||
        im_row.size() != static_cast<std::size_t>(dim)) {
      throw ParseError(re.path + "[" + std::to_string(i) + "]",
                       "expected 2^n columns");
    }
    for (Eigen::Index j = 0; j < dim; ++j) {
      m(i, j) = {re_row[j], im_row[j]};
    }
  }
  try {
    return DenseMixedSpec{DensityMatrix(n, std::move(m))};
  } catch (const std::invalid_argument& err) {
    throw ParseError(root.path, err.what());
  }
}

// --- canonical emission ---

void emit_real_array(std::string& out, const std::vector<double>& values) {
  out += '[';
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(values[i]);
  }
  out += ']';
}

std::vector<double> reals(const std::vector<Complex>& values) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].real();
  return out;
}

std::vector<double> imags(const std::vector<Complex>& values) {
  std::vector<double> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i].imag();
  return out;
}

void emit_w_fields(std::string& out, const WClassSpec& spec) {
  out += "  \"a_re\": " + format_double(spec.a.real()) + ",\n";
  out += "  \"a_im\": " + format_double(spec.a.imag()) + ",\n";
  out += "  \"b_re\": ";
  emit_real_array(out, reals(spec.b));
  out += ",\n  \"b_im\": ";
  emit_real_array(out, imags(spec.b));
  out += '\n';
}

std::string quote(const std::string& text) {
  // Block names and kinds are plain identifiers; escape defensively anyway.
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string StateFile::kind_name() const {
  switch (payload.index()) {
    case 0:
      return "w_class";
    case 1:
      return "mixed_w";
    case 2:
      return "partitioned_w";
    case 3:
      return "ghz";
    case 4:
      return "dense_pure";
    case 5:
      return "dense_mixed";
  }
  throw std::logic_error("unknown state kind");
}

bool StateFile::is_pure() const {
  return payload.index() != 1 && payload.index() != 5;
}

int StateFile::n_qubits() const {
  switch (payload.index()) {
    case 0:
      return std::get<WClassSpec>(payload).n_qubits();
    case 1:
      return std::get<MixedFamilySpec>(payload).w.n_qubits();
    case 2:
      return std::get<PartitionedWSpec>(payload).n_qubits();
    case 3:
      return std::get<GhzSpec>(payload).n_qubits;
    case 4:
      return std::get<DensePureSpec>(payload).state.n_qubits();
    case 5:
      return std::get<DenseMixedSpec>(payload).state.n_qubits();
  }
  throw std::logic_error("unknown state kind");
}

PureState StateFile::to_pure() const {
  switch (payload.index()) {
    case 0:
      return w_class(std::get<WClassSpec>(payload));
    case 2:
      return w_partitioned(std::get<PartitionedWSpec>(payload)).first;
    case 3:
      return ghz(std::get<GhzSpec>(payload).n_qubits);
    case 4:
      return std::get<DensePureSpec>(payload).state;
    default:
      throw std::invalid_argument("state kind '" + kind_name() +
                                  "' is not pure");
  }
}

DensityMatrix StateFile::to_density() const {
  switch (payload.index()) {
    case 1:
      return mixed_family(std::get<MixedFamilySpec>(payload));
    case 5:
      return std::get<DenseMixedSpec>(payload).state;
    default:
      return to_pure().to_density();
  }
}

StateFile parse_state_file(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError("$", std::string("invalid JSON: ") + err.what());
  }
  const Node root{&doc, "$"};
  const std::string kind = root.child("kind").as_string();
  if (kind == "w_class") return {parse_w_class(root)};
  if (kind == "mixed_w") return {parse_mixed_w(root)};
  if (kind == "partitioned_w") return {parse_partitioned_w(root)};
  if (kind == "ghz") return {parse_ghz(root)};
  if (kind == "dense_pure") return {parse_dense_pure(root)};
  if (kind == "dense_mixed") return {parse_dense_mixed(root)};
  throw ParseError("$.kind", "unknown state kind '" + kind + "'");
}

StateFile load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open state file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state_file(buffer.str());
}

std::string serialize_state_file(const StateFile& file) {
  std::string out = "{\n  \"kind\": " + quote(file.kind_name()) + ",\n";
  switch (file.payload.index()) {
    case 0: {
      emit_w_fields(out, std::get<WClassSpec>(file.payload));
      break;
    }
    case 1: {
      const auto& spec = std::get<MixedFamilySpec>(file.payload);
      out += "  \"p\": " + format_double(spec.p) + ",\n";
      emit_w_fields(out, spec.w);
      break;
    }
    case 2: {
      const auto& spec = std::get<PartitionedWSpec>(file.payload);
      out += "  \"a_re\": " + format_double(spec.a_tilde.real()) + ",\n";
      out += "  \"a_im\": " + format_double(spec.a_tilde.imag()) + ",\n";
      out += "  \"blocks\": [\n";
      for (std::size_t i = 0; i < spec.blocks.size(); ++i) {
        const auto& block = spec.blocks[i];
        out += "    {\"name\": " + quote(block.name) + ", \"re\": ";
        emit_real_array(out, reals(block.amplitudes));
        out += ", \"im\": ";
        emit_real_array(out, imags(block.amplitudes));
        out += '}';
        if (i + 1 < spec.blocks.size()) out += ',';
        out += '\n';
      }
      out += "  ]\n";
      break;
    }
    case 3: {
      out += "  \"n\": " +
             std::to_string(std::get<GhzSpec>(file.payload).n_qubits) + "\n";
      break;
    }
    case 4: {
      const auto& state = std::get<DensePureSpec>(file.payload).state;
      out += "  \"n\": " + std::to_string(state.n_qubits()) + ",\n";
      std::vector<double> re(state.dim()), im(state.dim());
      for (Eigen::Index i = 0; i < state.dim(); ++i) {
        re[i] = state.amplitudes()(i).real();
        im[i] = state.amplitudes()(i).imag();
      }
      out += "  \"re\": ";
      emit_real_array(out, re);
      out += ",\n  \"im\": ";
      emit_real_array(out, im);
      out += '\n';
      break;
    }
    case 5: {
      const auto& state = std::get<DenseMixedSpec>(file.payload).state;
      const Eigen::Index dim = state.dim();
      out += "  \"n\": " + std::to_string(state.n_qubits()) + ",\n";
      for (const char* part : {"re", "im"}) {
        out += std::string("  \"") + part + "\": [\n";
        for (Eigen::Index i = 0; i < dim; ++i) {
          std::vector<double> row(dim);
          for (Eigen::Index j = 0; j < dim; ++j) {
            const Complex entry = state.matrix()(i, j);
            row[j] = (part[0] == 'r') ? entry.real() : entry.imag();
          }
          out += "    ";
          emit_real_array(out, row);
          out += (i + 1 < dim) ? ",\n" : "\n";
        }
        out += (part[0] == 'r') ? "  ],\n" : "  ]\n";
      }
      break;
    }
  }
  out += "}\n";
  return out;
}

}  // namespace tangle
