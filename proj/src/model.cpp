#include "synrep/model.hpp"

#include <json.hpp>

#include "synrep/error.hpp"
#include "synrep/rng.hpp"

namespace synrep {

using Json = nlohmann::ordered_json;

ProsodyModel ProsodyModel::initialize(LabelVocabulary labels, PhonemeInventory phonemes,
                                      const ModelDims& dims, std::uint64_t seed) {
  if (dims.d_emb == 0 || dims.d_hid == 0 || dims.d_ph == 0) {
    throw Error(ErrorCode::InvalidArgument, "model dimensions must be positive");
  }
  Rng rng(seed);
  ProsodyModel m;
  m.dims = dims;
  m.encoder = EncoderParameters::uniform(labels.size(), dims.d_emb, dims.d_hid, kInitScale, rng);
  m.phoneme_embedding = Matrix(phonemes.size(), dims.d_ph);
  for (double& x : m.phoneme_embedding.data()) x = rng.uniform(-kInitScale, kInitScale);
  m.head_weights.resize(2 * dims.d_hid);
  for (double& x : m.head_weights) x = rng.uniform(-kInitScale, kInitScale);
  m.labels = std::move(labels);
  m.phonemes = std::move(phonemes);
  return m;
}

void ProsodyModel::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::DimensionMismatch, "model: " + what);
  };
  if (encoder.embedding.size() != labels.size() || encoder.d_emb() != dims.d_emb) {
    fail("embedding table shape");
  }
  for (const GruParameters* g : {&encoder.left, &encoder.right}) {
    if (g->input_dim() != dims.d_emb || g->hidden_dim() != dims.d_hid) fail("GRU shape");
    g->validate();
  }
  if (phoneme_embedding.rows() != phonemes.size() ||
      (phoneme_embedding.rows() > 0 && phoneme_embedding.cols() != dims.d_ph)) {
    fail("phoneme embedding shape");
  }
  if (head_weights.size() != 2 * dims.d_hid) fail("head width");
}

namespace {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    rows.push_back(Json(std::vector<double>(row.begin(), row.end())));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols, const char* name) {
  if (!j.is_array() || j.size() != rows) {
    throw Error(ErrorCode::FormatError, std::string(name) + ": expected " + std::to_string(rows) + " rows");
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto values = j[r].get<std::vector<double>>();
    if (values.size() != cols) {
      throw Error(ErrorCode::FormatError, std::string(name) + ": row " + std::to_string(r) +
                                              " should have " + std::to_string(cols) + " entries");
    }
    std::copy(values.begin(), values.end(), m.row(r).begin());
  }
  return m;
}

Vector vector_from_json(const Json& j, std::size_t size, const char* name) {
  auto v = j.get<Vector>();
  if (v.size() != size) {
    throw Error(ErrorCode::FormatError, std::string(name) + ": expected " + std::to_string(size) + " entries");
  }
  return v;
}

Json gru_to_json(const GruParameters& g) {
  Json j;
  j["W_z"] = matrix_to_json(g.w_z);
  j["W_r"] = matrix_to_json(g.w_r);
  j["W_h"] = matrix_to_json(g.w_h);
  j["U_z"] = matrix_to_json(g.u_z);
  j["U_r"] = matrix_to_json(g.u_r);
  j["U_h"] = matrix_to_json(g.u_h);
  j["b_z"] = g.b_z;
  j["b_r"] = g.b_r;
  j["b_h"] = g.b_h;
  return j;
}

GruParameters gru_from_json(const Json& j, std::size_t in, std::size_t hid) {
  GruParameters g;
  g.w_z = matrix_from_json(j.at("W_z"), hid, in, "W_z");
  g.w_r = matrix_from_json(j.at("W_r"), hid, in, "W_r");
  g.w_h = matrix_from_json(j.at("W_h"), hid, in, "W_h");
  g.u_z = matrix_from_json(j.at("U_z"), hid, hid, "U_z");
  g.u_r = matrix_from_json(j.at("U_r"), hid, hid, "U_r");
  g.u_h = matrix_from_json(j.at("U_h"), hid, hid, "U_h");
  g.b_z = vector_from_json(j.at("b_z"), hid, "b_z");
  g.b_r = vector_from_json(j.at("b_r"), hid, "b_r");
  g.b_h = vector_from_json(j.at("b_h"), hid, "b_h");
  return g;
}

}  // namespace

std::string save_checkpoint(const ProsodyModel& model) {
  model.validate();
  Json j;
  j["format_version"] = kCheckpointFormatVersion;
  j["dims"] = {{"d_emb", model.dims.d_emb}, {"d_hid", model.dims.d_hid}, {"d_ph", model.dims.d_ph}};
  j["labels"] = model.labels.labels();
  j["phonemes"] = model.phonemes.symbols();
  j["embedding"] = matrix_to_json(model.encoder.embedding.weights);
  j["gru_left"] = gru_to_json(model.encoder.left);
  j["gru_right"] = gru_to_json(model.encoder.right);
  j["phoneme_embedding"] = matrix_to_json(model.phoneme_embedding);
  j["head"] = {{"weights", model.head_weights}, {"bias", model.head_bias}};
  return j.dump() + "\n";
}

ProsodyModel load_checkpoint(std::string_view json_text) {
  try {
    const Json j = Json::parse(json_text);
    const int version = j.at("format_version").get<int>();
    if (version != kCheckpointFormatVersion) {
      throw Error(ErrorCode::FormatError,
                  "unsupported checkpoint format_version " + std::to_string(version));
    }
    ProsodyModel m;
    const Json& dims = j.at("dims");
    m.dims = {dims.at("d_emb").get<std::size_t>(), dims.at("d_hid").get<std::size_t>(),
              dims.at("d_ph").get<std::size_t>()};
    m.labels = LabelVocabulary(j.at("labels").get<std::vector<std::string>>());
    m.phonemes = PhonemeInventory(j.at("phonemes").get<std::vector<std::string>>());
    m.encoder.embedding.weights =
        matrix_from_json(j.at("embedding"), m.labels.size(), m.dims.d_emb, "embedding");
    m.encoder.left = gru_from_json(j.at("gru_left"), m.dims.d_emb, m.dims.d_hid);
    m.encoder.right = gru_from_json(j.at("gru_right"), m.dims.d_emb, m.dims.d_hid);
    m.phoneme_embedding = matrix_from_json(j.at("phoneme_embedding"), m.phonemes.size(),
                                           m.dims.d_ph, "phoneme_embedding");
    m.head_weights = vector_from_json(j.at("head").at("weights"), 2 * m.dims.d_hid, "head.weights");
    m.head_bias = j.at("head").at("bias").get<double>();
    m.validate();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::FormatError, std::string("checkpoint: ") + e.what());
  }
}

}  // namespace synrep
