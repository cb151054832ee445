#include "polyfreq/model_spec.hpp"

#include "json.hpp"
#include "polyfreq/error.hpp"

namespace polyfreq {

namespace {

using nlohmann::json;

NoiseSpec parse_noise(const json& doc) {
  if (!doc.contains("noise")) return NoiseSpec::gaussian(1.0);
  const json& noise = doc.at("noise");
  const auto kind = noise.value("distribution", std::string("gaussian"));
  if (kind == "gaussian") return NoiseSpec::gaussian(noise.value("sigma", 1.0));
  if (kind == "uniform") return NoiseSpec::uniform(noise.at("c").get<double>());
  if (kind == "laplace") return NoiseSpec::laplace(noise.at("scale").get<double>());
  throw DataError("unknown noise distribution '" + kind + "'");
}

json noise_json(const NoiseSpec& noise) {
  switch (noise.kind()) {
    case NoiseSpec::Kind::gaussian: return {{"distribution", "gaussian"}, {"sigma", noise.parameter()}};
    case NoiseSpec::Kind::uniform: return {{"distribution", "uniform"}, {"c", noise.parameter()}};
    case NoiseSpec::Kind::laplace: return {{"distribution", "laplace"}, {"scale", noise.parameter()}};
  }
  return {};
}

std::vector<double> list_or_empty(const json& doc, const char* key) {
  if (!doc.contains(key)) return {};
  return doc.at(key).get<std::vector<double>>();
}

}  // namespace

TimeSeriesModel parse_model_spec(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw DataError("model spec is not valid JSON at byte " + std::to_string(e.byte) + ": " + e.what(),
                    {e.byte});
  }
  try {
    if (!doc.is_object()) throw DataError("model spec must be a JSON object");
    const int schema = doc.value("schema", kModelSpecSchema);
    if (schema != kModelSpecSchema) {
      throw DataError("unsupported model spec schema " + std::to_string(schema));
    }
    const auto family = doc.at("family").get<std::string>();
    if (family == "arma") {
      return ArmaModel{doc.value("a0", 0.0), list_or_empty(doc, "ar"), list_or_empty(doc, "ma"), parse_noise(doc)};
    }
    if (family == "linear") {
      return LinearProcess{doc.value("mean", 0.0), doc.at("coeffs").get<std::vector<double>>(), parse_noise(doc)};
    }
    if (family == "nlar_tar") {
      return TarModel{doc.at("a").get<double>(), doc.at("b").get<double>(), parse_noise(doc)};
    }
    throw DataError("unknown model family '" + family + "' (expected arma, linear or nlar_tar)");
  } catch (const json::exception& e) {
    throw DataError(std::string("invalid model spec: ") + e.what());
  } catch (const ModelError& e) {
    throw DataError(std::string("invalid model spec: ") + e.what());
  }
}

std::string model_spec_to_json(const TimeSeriesModel& model) {
  json doc;
  doc["schema"] = kModelSpecSchema;
  doc["family"] = family_name(model);
  if (const auto* m = std::get_if<ArmaModel>(&model)) {
    doc["a0"] = m->a0;
    doc["ar"] = m->ar;
    doc["ma"] = m->ma;
  } else if (const auto* m = std::get_if<LinearProcess>(&model)) {
    doc["mean"] = m->mean;
    doc["coeffs"] = m->coeffs;
  } else if (const auto* m = std::get_if<TarModel>(&model)) {
    doc["a"] = m->a;
    doc["b"] = m->b;
  } else {
    throw DataError("NLAR models with arbitrary maps cannot be serialized");
  }
  doc["noise"] = noise_json(noise_of(model));
  return doc.dump();
}

}  // namespace polyfreq
