#pragma once

#include <string>
#include <vector>

#include "gamowlab/hardy_waves.hpp"
#include "gamowlab/smatrix_model.hpp"

namespace gamowlab {

struct CorpusModel {
  std::string name;
  SMatrixModel model;
};

struct WavePair {
  std::string name;
  ObservableWave probe;
  StateWave state;
};

// narrow:  w_R = 1 - 0.05i
// wide:    w_R = 1 - 0.3i
// kaon:    w_S = 1 - 0.1i, w_L = 1 - 0.01i (Gamma_S / Gamma_L = 10)
// order2:  (1.2 - 0.1i, N = 2) and (0.7 - 0.05i, N = 1)
std::vector<CorpusModel> corpus_models();

// broad:     f = g = 1 / (w + 1 + 2i)^2
// localized: f = 1 / (w - 1 - 0.1i)^2, g = 1 / (w - 1 + 0.1i)^2
std::vector<WavePair> corpus_wave_pairs();

const CorpusModel& corpus_model(const std::string& name);
const WavePair& corpus_wave_pair(const std::string& name);

// 1 / (w - a)^2 as ascending coefficient lists.
std::vector<cplx> double_pole_denominator(cplx a);

}  // namespace gamowlab
