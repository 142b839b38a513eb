#include "gamowlab/corpus.hpp"

namespace gamowlab {

std::vector<cplx> double_pole_denominator(cplx a) { return {a * a, -2.0 * a, 1.0}; }

std::vector<CorpusModel> corpus_models() {
  return {
      {"narrow", SMatrixModel({ResonancePole(cplx(1.0, -0.05))})},
      {"wide", SMatrixModel({ResonancePole(cplx(1.0, -0.3))})},
      {"kaon", SMatrixModel({ResonancePole(cplx(1.0, -0.1)), ResonancePole(cplx(1.0, -0.01))})},
      {"order2", SMatrixModel({ResonancePole(cplx(1.2, -0.1), 2), ResonancePole(cplx(0.7, -0.05))})},
  };
}

std::vector<WavePair> corpus_wave_pairs() {
  const cplx broad{-1.0, -2.0};
  return {
      {"broad", ObservableWave::from_coefficients({1.0}, double_pole_denominator(broad)),
       StateWave::from_coefficients({1.0}, double_pole_denominator(broad))},
      {"localized", ObservableWave::from_coefficients({1.0}, double_pole_denominator({1.0, -0.1})),
       StateWave::from_coefficients({1.0}, double_pole_denominator({1.0, 0.1}))},
  };
}

const CorpusModel& corpus_model(const std::string& name) {
  static const std::vector<CorpusModel> models = corpus_models();
  for (const auto& m : models) {
    if (m.name == name) return m;
  }
  throw ValidationError("unknown corpus model '" + name + "'");
}

const WavePair& corpus_wave_pair(const std::string& name) {
  static const std::vector<WavePair> pairs = corpus_wave_pairs();
  for (const auto& p : pairs) {
    if (p.name == name) return p;
  }
  throw ValidationError("unknown corpus wave pair '" + name + "'");
}

}  // namespace gamowlab
