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

#include "dqpa/qnet.hpp"

#include <cmath>
#include <stdexcept>

namespace dqpa {

namespace {

constexpr double kBeta1 = 0.9;
constexpr double kBeta2 = 0.999;
constexpr double kAdamEps = 1e-8;

Eigen::MatrixXd glorot_matrix(int rows, int cols, Rng& rng) {
    const double limit = std::sqrt(6.0 / double(rows + cols));
    Eigen::MatrixXd w(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            w(r, c) = limit * (2.0 * rng.uniform() - 1.0);
    return w;
}

inline Eigen::MatrixXd relu(const Eigen::MatrixXd& z) { return z.cwiseMax(0.0); }

void append_matrix(std::vector<double>& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            out.push_back(m(r, c));
}

void append_vector(std::vector<double>& out, const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(v(i));
}

std::size_t read_matrix(Eigen::MatrixXd& m, const std::vector<double>& src, std::size_t pos) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            m(r, c) = src[pos++];
    return pos;
}

std::size_t read_vector(Eigen::VectorXd& v, const std::vector<double>& src, std::size_t pos) {
    for (Eigen::Index i = 0; i < v.size(); ++i)
        v(i) = src[pos++];
    return pos;
}

} // namespace

QNetwork QNetwork::glorot_init(int input, int hidden1, int hidden2, int output, Rng& rng) {
    if (input < 1 || hidden1 < 1 || hidden2 < 1 || output < 1)
        throw std::invalid_argument("QNetwork: all layer dims must be positive");
    QNetwork net;
    net.w1_ = glorot_matrix(hidden1, input, rng);
    net.w2_ = glorot_matrix(hidden2, hidden1, rng);
    net.w3_ = glorot_matrix(output, hidden2, rng);
    net.b1_ = Eigen::VectorXd::Zero(hidden1);
    net.b2_ = Eigen::VectorXd::Zero(hidden2);
    net.b3_ = Eigen::VectorXd::Zero(output);
    net.ensure_adam_state();
    return net;
}

void QNetwork::ensure_adam_state() {
    m_w1_ = Eigen::MatrixXd::Zero(w1_.rows(), w1_.cols());
    m_w2_ = Eigen::MatrixXd::Zero(w2_.rows(), w2_.cols());
    m_w3_ = Eigen::MatrixXd::Zero(w3_.rows(), w3_.cols());
    v_w1_ = m_w1_;
    v_w2_ = m_w2_;
    v_w3_ = m_w3_;
    m_b1_ = Eigen::VectorXd::Zero(b1_.size());
    m_b2_ = Eigen::VectorXd::Zero(b2_.size());
    m_b3_ = Eigen::VectorXd::Zero(b3_.size());
    v_b1_ = m_b1_;
    v_b2_ = m_b2_;
    v_b3_ = m_b3_;
    adam_step_ = 0;
}

Eigen::VectorXd QNetwork::forward(const Eigen::VectorXd& state) const {
    if (state.size() != w1_.cols())
        throw std::invalid_argument("QNetwork::forward: state length mismatch");
    const Eigen::VectorXd a1 = (w1_ * state + b1_).cwiseMax(0.0);
    const Eigen::VectorXd a2 = (w2_ * a1 + b2_).cwiseMax(0.0);
    return w3_ * a2 + b3_;
}

Eigen::MatrixXd QNetwork::forward_batch(const Eigen::MatrixXd& states) const {
    if (states.rows() != w1_.cols())
        throw std::invalid_argument("QNetwork::forward_batch: state length mismatch");
    const Eigen::MatrixXd a1 = relu((w1_ * states).colwise() + b1_);
    const Eigen::MatrixXd a2 = relu((w2_ * a1).colwise() + b2_);
    return (w3_ * a2).colwise() + b3_;
}

double QNetwork::loss_and_gradients(const Eigen::MatrixXd& states,
                                    const std::vector<int>& actions,
                                    const Eigen::VectorXd& targets, Gradients& out) const {
    const Eigen::Index batch = states.cols();
    if (batch == 0)
        throw std::invalid_argument("QNetwork: empty batch");
    if (Eigen::Index(actions.size()) != batch || targets.size() != batch)
        throw std::invalid_argument("QNetwork: batch size mismatch");

    const Eigen::MatrixXd z1 = (w1_ * states).colwise() + b1_;
    const Eigen::MatrixXd a1 = relu(z1);
    const Eigen::MatrixXd z2 = (w2_ * a1).colwise() + b2_;
    const Eigen::MatrixXd a2 = relu(z2);
    const Eigen::MatrixXd q = (w3_ * a2).colwise() + b3_;

    // dL/dq is nonzero only at each record's taken action.
    Eigen::MatrixXd dq = Eigen::MatrixXd::Zero(q.rows(), batch);
    double loss = 0.0;
    const double scale = 2.0 / double(batch);
    for (Eigen::Index b = 0; b < batch; ++b) {
        const int a = actions[std::size_t(b)];
        if (a < 0 || a >= q.rows())
            throw std::invalid_argument("QNetwork: action index out of range");
        const double diff = q(a, b) - targets(b);
        loss += diff * diff;
        dq(a, b) = scale * diff;
    }
    loss /= double(batch);

    const Eigen::MatrixXd dz2 =
        (w3_.transpose() * dq).cwiseProduct((z2.array() > 0.0).cast<double>().matrix());
    const Eigen::MatrixXd dz1 =
        (w2_.transpose() * dz2).cwiseProduct((z1.array() > 0.0).cast<double>().matrix());

    out.w3 = dq * a2.transpose();
    out.b3 = dq.rowwise().sum();
    out.w2 = dz2 * a1.transpose();
    out.b2 = dz2.rowwise().sum();
    out.w1 = dz1 * states.transpose();
    out.b1 = dz1.rowwise().sum();
    return loss;
}

Eigen::VectorXd QNetwork::input_gradient(const Eigen::VectorXd& state, int action) const {
    if (action < 0 || action >= output_dim())
        throw std::invalid_argument("QNetwork::input_gradient: action out of range");
    const Eigen::VectorXd z1 = w1_ * state + b1_;
    const Eigen::VectorXd a1 = z1.cwiseMax(0.0);
    const Eigen::VectorXd z2 = w2_ * a1 + b2_;

    const Eigen::VectorXd dz2 =
        w3_.row(action).transpose().cwiseProduct((z2.array() > 0.0).cast<double>().matrix());
    const Eigen::VectorXd dz1 =
        (w2_.transpose() * dz2).cwiseProduct((z1.array() > 0.0).cast<double>().matrix());
    return w1_.transpose() * dz1;
}

void QNetwork::adam_update(const Gradients& grads, double lr) {
    ++adam_step_;
    const double m_corr = 1.0 - std::pow(kBeta1, double(adam_step_));
    const double v_corr = 1.0 - std::pow(kBeta2, double(adam_step_));

    auto update = [&](auto& param, auto& m, auto& v, const auto& g) {
        m = kBeta1 * m + (1.0 - kBeta1) * g;
        v = kBeta2 * v + (1.0 - kBeta2) * g.cwiseProduct(g);
        param.array() -=
            lr * (m.array() / m_corr) / ((v.array() / v_corr).sqrt() + kAdamEps);
    };
    update(w1_, m_w1_, v_w1_, grads.w1);
    update(b1_, m_b1_, v_b1_, grads.b1);
    update(w2_, m_w2_, v_w2_, grads.w2);
    update(b2_, m_b2_, v_b2_, grads.b2);
    update(w3_, m_w3_, v_w3_, grads.w3);
    update(b3_, m_b3_, v_b3_, grads.b3);
}

std::vector<double> QNetwork::flatten_parameters() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    append_matrix(out, w1_);
    append_vector(out, b1_);
    append_matrix(out, w2_);
    append_vector(out, b2_);
    append_matrix(out, w3_);
    append_vector(out, b3_);
    return out;
}

std::vector<double> QNetwork::flatten_adam_m() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    append_matrix(out, m_w1_);
    append_vector(out, m_b1_);
    append_matrix(out, m_w2_);
    append_vector(out, m_b2_);
    append_matrix(out, m_w3_);
    append_vector(out, m_b3_);
    return out;
}

std::vector<double> QNetwork::flatten_adam_v() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    append_matrix(out, v_w1_);
    append_vector(out, v_b1_);
    append_matrix(out, v_w2_);
    append_vector(out, v_b2_);
    append_matrix(out, v_w3_);
    append_vector(out, v_b3_);
    return out;
}

std::size_t QNetwork::parameter_count() const {
    return std::size_t(w1_.size()) + b1_.size() + w2_.size() + b2_.size() + w3_.size() +
           b3_.size();
}

void QNetwork::load(const std::array<int, 4>& dims, const std::vector<double>& params,
                    const std::vector<double>& adam_m, const std::vector<double>& adam_v,
                    std::uint64_t adam_step) {
    for (int d : dims)
        if (d < 1)
            throw std::invalid_argument("QNetwork::load: nonpositive layer dim");
    w1_.resize(dims[1], dims[0]);
    b1_.resize(dims[1]);
    w2_.resize(dims[2], dims[1]);
    b2_.resize(dims[2]);
    w3_.resize(dims[3], dims[2]);
    b3_.resize(dims[3]);
    const std::size_t expected = parameter_count();
    if (params.size() != expected || adam_m.size() != expected || adam_v.size() != expected)
        throw std::invalid_argument("QNetwork::load: flat array length does not match dims");

    std::size_t pos = 0;
    pos = read_matrix(w1_, params, pos);
    pos = read_vector(b1_, params, pos);
    pos = read_matrix(w2_, params, pos);
    pos = read_vector(b2_, params, pos);
    pos = read_matrix(w3_, params, pos);
    pos = read_vector(b3_, params, pos);

    ensure_adam_state();
    pos = 0;
    pos = read_matrix(m_w1_, adam_m, pos);
    pos = read_vector(m_b1_, adam_m, pos);
    pos = read_matrix(m_w2_, adam_m, pos);
    pos = read_vector(m_b2_, adam_m, pos);
    pos = read_matrix(m_w3_, adam_m, pos);
    pos = read_vector(m_b3_, adam_m, pos);
    pos = 0;
    pos = read_matrix(v_w1_, adam_v, pos);
    pos = read_vector(v_b1_, adam_v, pos);
    pos = read_matrix(v_w2_, adam_v, pos);
    pos = read_vector(v_b2_, adam_v, pos);
    pos = read_matrix(v_w3_, adam_v, pos);
    pos = read_vector(v_b3_, adam_v, pos);
    adam_step_ = adam_step;
}

void QNetwork::nudge_parameter(std::size_t flat_index, double delta) {
    auto in_matrix = [&](Eigen::MatrixXd& m) {
        if (flat_index < std::size_t(m.size())) {
            const Eigen::Index r = Eigen::Index(flat_index) / m.cols();
            const Eigen::Index c = Eigen::Index(flat_index) % m.cols();
            m(r, c) += delta;
            return true;
        }
        flat_index -= std::size_t(m.size());
        return false;
    };
    auto in_vector = [&](Eigen::VectorXd& v) {
        if (flat_index < std::size_t(v.size())) {
            v(Eigen::Index(flat_index)) += delta;
            return true;
        }
        flat_index -= std::size_t(v.size());
        return false;
    };
    if (in_matrix(w1_) || in_vector(b1_) || in_matrix(w2_) || in_vector(b2_) ||
        in_matrix(w3_) || in_vector(b3_))
        return;
    throw std::out_of_range("QNetwork::nudge_parameter: index past parameter count");
}

} // namespace dqpa
