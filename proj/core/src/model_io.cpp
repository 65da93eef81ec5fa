#include "gwmlp/model_io.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "gwmlp/error.hpp"
#include "text_util.hpp"

namespace gwmlp {

namespace {

void write_matrix(std::ostream& out, const std::string& header, const Matrix& m) {
  out << header << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << detail::fmt_g17(m(i, j));
    }
    out << '\n';
  }
}

class TokenReader {
public:
  explicit TokenReader(std::istream& in) : in_(in) {}

  std::string word(const std::string& section) {
    std::string token;
    if (!(in_ >> token)) {
      throw ModelFormatError("model file: truncated in section '" + section + "'");
    }
    return token;
  }

  void expect(const std::string& literal, const std::string& section) {
    const std::string got = word(section);
    if (got != literal) {
      throw ModelFormatError("model file: section '" + section + "': expected '" +
                             literal + "', got '" + got + "'");
    }
  }

  std::size_t count(const std::string& section) {
    const std::string token = word(section);
    char* end = nullptr;
    const unsigned long long v = std::strtoull(token.c_str(), &end, 10);
    if (end != token.c_str() + token.size()) {
      throw ModelFormatError("model file: section '" + section +
                             "': invalid integer '" + token + "'");
    }
    return static_cast<std::size_t>(v);
  }

  double number(const std::string& section) {
    const std::string token = word(section);
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end != token.c_str() + token.size()) {
      throw ModelFormatError("model file: section '" + section +
                             "': invalid number '" + token + "'");
    }
    return v;
  }

  bool at_eof() {
    in_ >> std::ws;
    return in_.eof();
  }

private:
  std::istream& in_;
};

Matrix read_matrix(TokenReader& reader, const std::string& section) {
  reader.expect(section, section);
  const std::size_t rows = reader.count(section);
  const std::size_t cols = reader.count(section);
  if (rows == 0 || cols == 0) {
    throw ModelFormatError("model file: section '" + section + "': empty shape");
  }
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      m(i, j) = reader.number(section);
    }
  }
  return m;
}

void write_model_body(std::ostream& out, const MlpModel& model) {
  out << "MLPV1\n";
  out << "layers";
  for (std::size_t n : model.layer_sizes) out << ' ' << n;
  out << '\n';
  out << "hidden_activation " << to_string(model.hidden_activation) << '\n';
  out << "output_activation " << to_string(model.output_activation) << '\n';
  for (std::size_t l = 0; l < model.layer_count(); ++l) {
    write_matrix(out, "W" + std::to_string(l), model.weights[l]);
    write_matrix(out, "b" + std::to_string(l), model.biases[l]);
  }
}

MlpModel read_model_body(TokenReader& reader) {
  reader.expect("MLPV1", "header");
  reader.expect("layers", "layers");

  MlpModel model;
  // layer count is implied by the hidden_activation keyword that follows
  for (;;) {
    std::string token = reader.word("layers");
    if (token == "hidden_activation") {
      model.hidden_activation = activation_from_string(reader.word("hidden_activation"));
      break;
    }
    char* end = nullptr;
    const unsigned long long v = std::strtoull(token.c_str(), &end, 10);
    if (end != token.c_str() + token.size() || v == 0) {
      throw ModelFormatError("model file: section 'layers': invalid size '" +
                             token + "'");
    }
    model.layer_sizes.push_back(static_cast<std::size_t>(v));
  }
  if (model.layer_sizes.size() < 2) {
    throw ModelFormatError("model file: section 'layers': need at least 2 sizes");
  }
  reader.expect("output_activation", "output_activation");
  model.output_activation = activation_from_string(reader.word("output_activation"));

  for (std::size_t l = 0; l + 1 < model.layer_sizes.size(); ++l) {
    Matrix w = read_matrix(reader, "W" + std::to_string(l));
    Matrix b = read_matrix(reader, "b" + std::to_string(l));
    if (w.rows() != model.layer_sizes[l] || w.cols() != model.layer_sizes[l + 1]) {
      throw ModelFormatError("model file: section 'W" + std::to_string(l) +
                             "': shape " + w.shape_str() + " does not match layers");
    }
    if (b.rows() != 1 || b.cols() != model.layer_sizes[l + 1]) {
      throw ModelFormatError("model file: section 'b" + std::to_string(l) +
                             "': shape " + b.shape_str() + " does not match layers");
    }
    model.weights.push_back(std::move(w));
    model.biases.push_back(std::move(b));
  }
  return model;
}

} // namespace

void save_model(const std::string& path, const MlpModel& model) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write model file '" + path + "'");
  }
  write_model_body(out, model);
  if (!out) {
    throw DataError("failed writing model file '" + path + "'");
  }
}

void save_checkpoint(const std::string& path, const MlpModel& model,
                     const AdamCheckpoint& adam) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw DataError("cannot write model file '" + path + "'");
  }
  write_model_body(out, model);
  out << "ADAMV1\n";
  out << "t " << adam.state.t << '\n';
  out << "hyper " << detail::fmt_g17(adam.hyper.eta) << ' '
      << detail::fmt_g17(adam.hyper.beta1) << ' '
      << detail::fmt_g17(adam.hyper.beta2) << ' '
      << detail::fmt_g17(adam.hyper.epsilon) << '\n';
  for (std::size_t k = 0; k < adam.state.m.size(); ++k) {
    write_matrix(out, "m" + std::to_string(k), adam.state.m[k]);
    write_matrix(out, "v" + std::to_string(k), adam.state.v[k]);
  }
  if (!out) {
    throw DataError("failed writing model file '" + path + "'");
  }
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw DataError("cannot open model file '" + path + "'");
  }
  TokenReader reader(in);
  Checkpoint cp;
  cp.model = read_model_body(reader);
  if (reader.at_eof()) {
    return cp;
  }

  reader.expect("ADAMV1", "ADAMV1");
  AdamCheckpoint adam;
  reader.expect("t", "ADAMV1");
  adam.state.t = static_cast<std::int64_t>(reader.count("ADAMV1"));
  reader.expect("hyper", "ADAMV1");
  adam.hyper.eta = reader.number("hyper");
  adam.hyper.beta1 = reader.number("hyper");
  adam.hyper.beta2 = reader.number("hyper");
  adam.hyper.epsilon = reader.number("hyper");
  const std::size_t tensors = cp.model.layer_count() * 2; // W,b per layer
  for (std::size_t k = 0; k < tensors; ++k) {
    adam.state.m.push_back(read_matrix(reader, "m" + std::to_string(k)));
    adam.state.v.push_back(read_matrix(reader, "v" + std::to_string(k)));
  }
  cp.adam = std::move(adam);
  return cp;
}

MlpModel load_model(const std::string& path) {
  return load_checkpoint(path).model;
}

} // namespace gwmlp
