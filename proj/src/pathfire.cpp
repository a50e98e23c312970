// SPDX-License-Identifier: Apache-2.0
#include "flowfire/pathfire.hpp"

#include <cstdlib>
#include <string>
#include <utility>

#include "flowfire/error.hpp"

namespace flowfire {

void validate_path(const PathSpec& p) {
    if (p.faces.empty()) throw Error(ErrorCode::invalid_argument, "path is empty");
    for (std::size_t i = 0; i < p.faces.size(); ++i) {
        if (p.faces[i] == kMarkedFace) {
            throw Error(ErrorCode::invalid_argument, "path contains the marked face")
                .at_index(i);
        }
        if (i > 0 && dist(p.faces[i - 1], p.faces[i]) != 1) {
            throw Error(ErrorCode::invalid_argument, "path faces are not successive")
                .at_index(i);
        }
    }
}

namespace {

void require_row_input(const CanonicalRowInput& in) {
    if (in.n < 1 || in.ell < 1) {
        throw Error(ErrorCode::invalid_argument,
                    "canonical row needs n >= 1 and ell >= 1, got n=" +
                        std::to_string(in.n) + " ell=" + std::to_string(in.ell));
    }
}

}  // namespace

PathWeights canonical_row(const CanonicalRowInput& in) {
    require_row_input(in);
    PathWeights r(static_cast<std::size_t>(in.ell), in.n);
    r.resize(r.size() + static_cast<std::size_t>(in.n - ceil_half(in.n)), 0);
    return r;
}

bool can_fire_forward(const PathWeights& r, std::size_t i) noexcept {
    return i + 1 < r.size() && r[i] >= r[i + 1] + 2;
}

PathWeights path_fire_step(const PathWeights& r, std::size_t i) {
    if (i + 1 >= r.size()) {
        throw Error(ErrorCode::out_of_path,
                    "index " + std::to_string(i) + " has no successor on the path");
    }
    if (!can_fire_forward(r, i)) {
        throw Error(ErrorCode::illegal_fire,
                    "path fire at " + std::to_string(i) + " needs w[i] >= w[i+1] + 2");
    }
    PathWeights out = r;
    --out[i];
    ++out[i + 1];
    return out;
}

bool is_path_stable(const PathWeights& r) noexcept {
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        if (std::abs(r[i] - r[i + 1]) > 1) return false;
    }
    return true;
}

bool is_weakly_decreasing(const PathWeights& r) noexcept {
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        if (r[i] < r[i + 1]) return false;
    }
    return true;
}

PathWeights trim_trailing_zeros(PathWeights r) {
    while (!r.empty() && r.back() == 0) r.pop_back();
    return r;
}

PathWeights closed_form_stable(const CanonicalRowInput& in) {
    require_row_input(in);
    const int n = in.n;
    const int ell = in.ell;
    const int t = std::max(0, ell - n / 2);
    const long long residual = static_cast<long long>(n) * ell - static_cast<long long>(t) * n;
    long long s = 0;
    while ((s + 1) * (s + 2) / 2 <= residual) ++s;
    const long long rem = residual - s * (s + 1) / 2;

    PathWeights out(static_cast<std::size_t>(t), n);
    for (long long v = s; v >= 1; --v) {
        out.push_back(static_cast<int>(v));
        if (v == rem) out.push_back(static_cast<int>(v));
    }
    return out;
}

std::set<PathWeights> simulate_all_orders(const PathWeights& r0) {
    if (r0.empty()) throw Error(ErrorCode::invalid_argument, "path weights are empty");
    if (!is_weakly_decreasing(r0)) {
        throw Error(ErrorCode::out_of_scope, "path weights must be weakly decreasing");
    }
    std::set<PathWeights> seen{r0};
    std::set<PathWeights> terminals;
    std::vector<PathWeights> stack{r0};
    while (!stack.empty()) {
        PathWeights r = std::move(stack.back());
        stack.pop_back();
        bool moved = false;
        for (std::size_t i = 0; i + 1 < r.size(); ++i) {
            if (!can_fire_forward(r, i)) continue;
            moved = true;
            PathWeights next = r;
            --next[i];
            ++next[i + 1];
            if (seen.insert(next).second) stack.push_back(std::move(next));
        }
        if (!moved) terminals.insert(std::move(r));
    }
    return terminals;
}

const char* to_string(LemmaPattern p) noexcept {
    switch (p) {
        case LemmaPattern::not_decreasing: return "not-decreasing";
        case LemmaPattern::fired_triple: return "fired-triple";
        case LemmaPattern::unit_descent_repeats: return "unit-descent-repeats";
    }
    return "unknown";
}

void check_lemma_state(const PathWeights& w, const std::vector<bool>& fired,
                       std::size_t step, std::vector<LemmaViolation>& out) {
    const std::size_t len = w.size();
    for (std::size_t i = 0; i + 1 < len; ++i) {
        if (w[i] < w[i + 1]) out.push_back({LemmaPattern::not_decreasing, step, i});
    }
    for (std::size_t i = 0; i + 2 < len; ++i) {
        if (w[i] == w[i + 1] && w[i + 1] == w[i + 2] && w[i] != 0 &&
            (fired[i] || fired[i + 1] || fired[i + 2])) {
            out.push_back({LemmaPattern::fired_triple, step, i});
        }
    }
    // Pairs (j,j+1) and (k,k+1) with k >= j+2, unit steps strictly between,
    // every face from j to k+1 fired.
    for (std::size_t j = 0; j + 1 < len; ++j) {
        if (w[j] != w[j + 1] || w[j] == 0 || !fired[j] || !fired[j + 1]) continue;
        for (std::size_t k = j + 2; k + 1 < len; ++k) {
            if (!fired[k] || w[k] != w[k - 1] - 1) break;
            if (w[k + 1] == w[k] && w[k] != 0 && fired[k + 1]) {
                out.push_back({LemmaPattern::unit_descent_repeats, step, j});
                break;
            }
        }
    }
}

LemmaReport check_trace_lemmas(std::span<const PathWeights> trace) {
    LemmaReport report;
    if (trace.empty()) return report;
    std::vector<bool> fired(trace.front().size(), false);
    for (std::size_t s = 0; s < trace.size(); ++s) {
        if (trace[s].size() != fired.size()) {
            throw Error(ErrorCode::invalid_argument, "trace configurations differ in length")
                .at_index(s);
        }
        if (s > 0) {
            for (std::size_t i = 0; i < fired.size(); ++i) {
                if (trace[s][i] != trace[s - 1][i]) fired[i] = true;
            }
        }
        check_lemma_state(trace[s], fired, s, report.violations);
        ++report.configurations_checked;
    }
    return report;
}

LemmaReport check_all_traces(const PathWeights& r0) {
    if (r0.empty()) throw Error(ErrorCode::invalid_argument, "path weights are empty");
    using State = std::pair<PathWeights, std::vector<bool>>;
    LemmaReport report;
    State start{r0, std::vector<bool>(r0.size(), false)};
    std::set<State> seen{start};
    std::vector<State> stack{start};
    while (!stack.empty()) {
        State st = std::move(stack.back());
        stack.pop_back();
        check_lemma_state(st.first, st.second, report.configurations_checked,
                          report.violations);
        ++report.configurations_checked;
        bool moved = false;
        for (std::size_t i = 0; i + 1 < st.first.size(); ++i) {
            if (!can_fire_forward(st.first, i)) continue;
            moved = true;
            State next = st;
            --next.first[i];
            ++next.first[i + 1];
            next.second[i] = true;
            next.second[i + 1] = true;
            if (seen.insert(next).second) stack.push_back(std::move(next));
        }
        if (!moved) report.terminal_fired.insert(st.second);
    }
    return report;
}

SupportBounds support_length_bounds(const CanonicalRowInput& in) {
    require_row_input(in);
    if (in.ell > ceil_half(in.n)) {
        throw Error(ErrorCode::out_of_scope,
                    "ell must not exceed ceil(n/2) = " + std::to_string(ceil_half(in.n)));
    }
    const PathWeights r = closed_form_stable(in);
    SupportBounds b;
    b.length = static_cast<int>(r.size());
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        if (r[i] == r[i + 1]) b.repeated = true;
    }
    b.m = in.n - b.length + (b.repeated ? 1 : 0);
    b.m_lower_bound = ceil_half(in.n) - in.ell + (b.repeated ? 1 : 0);
    b.bound_holds = b.m >= b.m_lower_bound;
    return b;
}

PathWeights read_path(const MarkedConfig& c, const PathSpec& p) {
    PathWeights w;
    w.reserve(p.faces.size());
    for (FaceCoord f : p.faces) w.push_back(c.weight(f));
    return w;
}

std::size_t fire_path_to_stable(MarkedConfig& c, const PathSpec& p,
                                std::vector<FireMove>* trace) {
    validate_path(p);
    PathWeights w = read_path(c, p);
    std::size_t moves = 0;
    std::size_t i = 0;
    // Firing at i can only enable i-1 and i+1, so the first legal index never
    // moves back by more than one.
    while (i + 1 < w.size()) {
        if (!can_fire_forward(w, i)) {
            ++i;
            continue;
        }
        --w[i];
        ++w[i + 1];
        ++moves;
        if (trace) trace->push_back({p.faces[i], p.faces[i + 1]});
        i = i > 0 ? i - 1 : 0;
    }
    for (std::size_t k = 0; k < w.size(); ++k) c.set(p.faces[k], w[k]);
    return moves;
}

}  // namespace flowfire
