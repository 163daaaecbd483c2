// Copyright 2026 The QLSTM Workbench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "qlstm/autodiff.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "qlstm/error.hpp"

namespace qlstm::ad {

namespace {

double logistic(double x) {
    if (x >= 0.0)
        return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

} // namespace

Var Tape::push(std::vector<double> value, std::vector<std::size_t> parents, BackwardFn fn) {
    Node n;
    n.grad.assign(value.size(), 0.0);
    n.value = std::move(value);
    n.parents = std::move(parents);
    n.backward = std::move(fn);
    nodes_.push_back(std::move(n));
    return Var{nodes_.size() - 1};
}

const Tape::Node &Tape::node(Var v) const {
    if (v.id >= nodes_.size())
        throw IndexError("tape node " + std::to_string(v.id) + " does not exist");
    return nodes_[v.id];
}

void Tape::check_same_length(Var a, Var b, const char *op) const {
    const auto la = node(a).value.size();
    const auto lb = node(b).value.size();
    if (la != lb)
        throw ShapeError(std::string(op) + ": length " + std::to_string(la) + " vs " +
                         std::to_string(lb));
}

Var Tape::leaf(std::vector<double> value) { return push(std::move(value), {}, nullptr); }

Var Tape::add(Var a, Var b) {
    check_same_length(a, b, "add");
    std::vector<double> out(node(a).value);
    const auto &bv = node(b).value;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] += bv[i];
    return push(std::move(out), {a.id, b.id}, [a, b](Tape &t, std::size_t self) {
        const auto &g = t.nodes_[self].grad;
        for (std::size_t i = 0; i < g.size(); ++i) {
            t.nodes_[a.id].grad[i] += g[i];
            t.nodes_[b.id].grad[i] += g[i];
        }
    });
}

Var Tape::sub(Var a, Var b) {
    check_same_length(a, b, "sub");
    std::vector<double> out(node(a).value);
    const auto &bv = node(b).value;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] -= bv[i];
    return push(std::move(out), {a.id, b.id}, [a, b](Tape &t, std::size_t self) {
        const auto &g = t.nodes_[self].grad;
        for (std::size_t i = 0; i < g.size(); ++i) {
            t.nodes_[a.id].grad[i] += g[i];
            t.nodes_[b.id].grad[i] -= g[i];
        }
    });
}

Var Tape::mul(Var a, Var b) {
    check_same_length(a, b, "mul");
    std::vector<double> out(node(a).value);
    const auto &bv = node(b).value;
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] *= bv[i];
    return push(std::move(out), {a.id, b.id}, [a, b](Tape &t, std::size_t self) {
        const auto &g = t.nodes_[self].grad;
        // a and b may be the same node; read values before accumulating.
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double av = t.nodes_[a.id].value[i];
            const double bv = t.nodes_[b.id].value[i];
            t.nodes_[a.id].grad[i] += g[i] * bv;
            t.nodes_[b.id].grad[i] += g[i] * av;
        }
    });
}

Var Tape::sigmoid(Var a) {
    std::vector<double> out(node(a).value);
    for (auto &x : out)
        x = logistic(x);
    return push(std::move(out), {a.id}, [a](Tape &t, std::size_t self) {
        const auto &n = t.nodes_[self];
        for (std::size_t i = 0; i < n.grad.size(); ++i)
            t.nodes_[a.id].grad[i] += n.grad[i] * n.value[i] * (1.0 - n.value[i]);
    });
}

Var Tape::tanh(Var a) {
    std::vector<double> out(node(a).value);
    for (auto &x : out)
        x = std::tanh(x);
    return push(std::move(out), {a.id}, [a](Tape &t, std::size_t self) {
        const auto &n = t.nodes_[self];
        for (std::size_t i = 0; i < n.grad.size(); ++i)
            t.nodes_[a.id].grad[i] += n.grad[i] * (1.0 - n.value[i] * n.value[i]);
    });
}

Var Tape::affine(Var x, Var weight, Var bias) {
    const auto &xv = node(x).value;
    const auto &wv = node(weight).value;
    const auto &bv = node(bias).value;
    const std::size_t rows = bv.size();
    const std::size_t cols = xv.size();
    if (wv.size() != rows * cols)
        throw ShapeError("affine: weight has " + std::to_string(wv.size()) +
                         " entries, expected " + std::to_string(rows) + "x" +
                         std::to_string(cols));
    std::vector<double> out(bv);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out[r] += wv[r * cols + c] * xv[c];
    return push(std::move(out), {x.id, weight.id, bias.id},
                [x, weight, bias, rows, cols](Tape &t, std::size_t self) {
                    const auto &g = t.nodes_[self].grad;
                    const auto xval = t.nodes_[x.id].value;
                    const auto wval = t.nodes_[weight.id].value;
                    auto &gx = t.nodes_[x.id].grad;
                    for (std::size_t r = 0; r < rows; ++r) {
                        t.nodes_[bias.id].grad[r] += g[r];
                        for (std::size_t c = 0; c < cols; ++c) {
                            t.nodes_[weight.id].grad[r * cols + c] += g[r] * xval[c];
                            gx[c] += g[r] * wval[r * cols + c];
                        }
                    }
                });
}

Var Tape::concat(Var a, Var b) {
    std::vector<double> out(node(a).value);
    const auto &bv = node(b).value;
    const std::size_t na = out.size();
    out.insert(out.end(), bv.begin(), bv.end());
    return push(std::move(out), {a.id, b.id}, [a, b, na](Tape &t, std::size_t self) {
        const auto &g = t.nodes_[self].grad;
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i < na)
                t.nodes_[a.id].grad[i] += g[i];
            else
                t.nodes_[b.id].grad[i - na] += g[i];
        }
    });
}

Var Tape::slice(Var a, std::size_t begin, std::size_t length) {
    const auto &av = node(a).value;
    if (begin + length > av.size() || length == 0)
        throw ShapeError("slice [" + std::to_string(begin) + ", " +
                         std::to_string(begin + length) + ") out of range for length " +
                         std::to_string(av.size()));
    std::vector<double> out(av.begin() + static_cast<std::ptrdiff_t>(begin),
                            av.begin() + static_cast<std::ptrdiff_t>(begin + length));
    return push(std::move(out), {a.id}, [a, begin](Tape &t, std::size_t self) {
        const auto &g = t.nodes_[self].grad;
        for (std::size_t i = 0; i < g.size(); ++i)
            t.nodes_[a.id].grad[begin + i] += g[i];
    });
}

Var Tape::sum(Var a) {
    double acc = 0.0;
    for (double v : node(a).value)
        acc += v;
    return push({acc}, {a.id}, [a](Tape &t, std::size_t self) {
        const double g = t.nodes_[self].grad[0];
        for (auto &ga : t.nodes_[a.id].grad)
            ga += g;
    });
}

Var Tape::squared_error(Var pred, std::span<const double> target) {
    const auto &pv = node(pred).value;
    if (pv.size() != target.size() || pv.empty())
        throw ShapeError("squared_error: prediction/target lengths differ or are empty");
    std::vector<double> diff(pv.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pv.size(); ++i) {
        diff[i] = pv[i] - target[i];
        acc += diff[i] * diff[i];
    }
    const double n = static_cast<double>(pv.size());
    return push({acc / n}, {pred.id},
                [pred, diff = std::move(diff), n](Tape &t, std::size_t self) {
                    const double g = t.nodes_[self].grad[0];
                    auto &gp = t.nodes_[pred.id].grad;
                    for (std::size_t i = 0; i < gp.size(); ++i)
                        gp[i] += g * 2.0 * diff[i] / n;
                });
}

Var Tape::quantum(const vqc::VqcSpec &spec, Var params, Var input, vqc::GradEngine engine) {
    const vqc::VqcParams p{node(params).value};
    const auto out = vqc::vqc_forward(spec, p, node(input).value);
    return push(out, {params.id, input.id},
                [spec, params, input, engine](Tape &t, std::size_t self) {
                    const auto &g = t.nodes_[self].grad;
                    bool any = false;
                    for (double v : g)
                        any = any || v != 0.0;
                    if (!any)
                        return;
                    const vqc::VqcParams pv{t.nodes_[params.id].value};
                    const auto grads =
                        vqc::vqc_grad(engine, spec, pv, t.nodes_[input.id].value, g);
                    auto &gp = t.nodes_[params.id].grad;
                    auto &gi = t.nodes_[input.id].grad;
                    for (std::size_t i = 0; i < gp.size(); ++i)
                        gp[i] += grads.params[i];
                    for (std::size_t i = 0; i < gi.size(); ++i)
                        gi[i] += grads.input[i];
                });
}

void Tape::backward(Var loss) {
    if (node(loss).value.size() != 1)
        throw ShapeError("backward needs a scalar loss, got length " +
                         std::to_string(node(loss).value.size()));
    if (backward_done_)
        throw StateError("backward called twice without zero_grads");
    backward_done_ = true;

    std::vector<bool> reached(loss.id + 1, false);
    reached[loss.id] = true;
    nodes_[loss.id].grad[0] += 1.0;
    for (std::size_t id = loss.id + 1; id-- > 0;) {
        if (!reached[id])
            continue;
        const Node &n = nodes_[id];
        if (!n.backward)
            continue;
        for (std::size_t p : n.parents)
            reached[p] = true;
        n.backward(*this, id);
    }
}

void Tape::zero_grads() {
    for (auto &n : nodes_)
        std::fill(n.grad.begin(), n.grad.end(), 0.0);
    backward_done_ = false;
}

std::span<const double> Tape::value(Var v) const { return node(v).value; }

std::span<const double> Tape::grad(Var v) const { return node(v).grad; }

} // namespace qlstm::ad
