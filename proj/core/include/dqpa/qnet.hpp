// dqpa: multi-cell downlink power allocation with deep Q learning
// Copyright (C) 2026 the dqpa developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef DQPA_QNET_HPP
#define DQPA_QNET_HPP

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "dqpa/rng.hpp"

namespace dqpa {

/// Four-layer feed-forward Q function: affine, ReLU, affine, ReLU, affine
/// with a linear output of one Q value per discrete action. Carries its own
/// Adam moment state so a checkpoint resumes training exactly.
class QNetwork {
  public:
    struct Gradients {
        Eigen::MatrixXd w1, w2, w3;
        Eigen::VectorXd b1, b2, b3;
    };

    QNetwork() = default;

    /// Glorot-uniform weights (row-major draw order), zero biases.
    static QNetwork glorot_init(int input, int hidden1, int hidden2, int output, Rng& rng);

    int input_dim() const { return int(w1_.cols()); }
    int output_dim() const { return int(w3_.rows()); }
    std::array<int, 4> layer_dims() const {
        return {int(w1_.cols()), int(w1_.rows()), int(w2_.rows()), int(w3_.rows())};
    }

    Eigen::VectorXd forward(const Eigen::VectorXd& state) const;

    /// States as columns; returns one Q column per state.
    Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& states) const;

    /// Mean squared TD error over the batch with gradient flowing only
    /// through each record's taken action. Returns the loss and fills `out`.
    double loss_and_gradients(const Eigen::MatrixXd& states, const std::vector<int>& actions,
                              const Eigen::VectorXd& targets, Gradients& out) const;

    /// d Q(state, action) / d state.
    Eigen::VectorXd input_gradient(const Eigen::VectorXd& state, int action) const;

    /// One Adam step (beta1 0.9, beta2 0.999, eps 1e-8) with step size lr.
    void adam_update(const Gradients& grads, double lr);

    std::uint64_t adam_step_count() const { return adam_step_; }

    // Flat parameter access in layer order (W1, b1, W2, b2, W3, b3), weights
    // row-major. Used by checkpointing and the finite-difference tests.
    std::vector<double> flatten_parameters() const;
    std::vector<double> flatten_adam_m() const;
    std::vector<double> flatten_adam_v() const;
    void load(const std::array<int, 4>& dims, const std::vector<double>& params,
              const std::vector<double>& adam_m, const std::vector<double>& adam_v,
              std::uint64_t adam_step);
    std::size_t parameter_count() const;

    /// Perturb a single flat-indexed parameter in place (test support).
    void nudge_parameter(std::size_t flat_index, double delta);

  private:
    void ensure_adam_state();

    Eigen::MatrixXd w1_, w2_, w3_;
    Eigen::VectorXd b1_, b2_, b3_;

    Eigen::MatrixXd m_w1_, m_w2_, m_w3_, v_w1_, v_w2_, v_w3_;
    Eigen::VectorXd m_b1_, m_b2_, m_b3_, v_b1_, v_b2_, v_b3_;
    std::uint64_t adam_step_ = 0;
};

} // namespace dqpa

#endif // DQPA_QNET_HPP
