// SPDX-License-Identifier: Apache-2.0
#include "evograph/numeric_search.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <random>
#include <thread>

namespace evograph {

const char* outcome_name(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::NoneFound: return "none_found";
        case OutcomeKind::Candidate: return "candidate";
        case OutcomeKind::VerifiedHom: return "verified_hom";
    }
    return "?";
}

void validate(const SearchConfig& cfg) {
    if (cfg.restarts < 1) throw Error(ErrorCode::InvalidParameter, "restarts must be at least 1");
    if (cfg.max_iterations < 1) throw Error(ErrorCode::InvalidParameter, "max_iterations must be at least 1");
    if (!(cfg.tau_res > 0 && cfg.tau_res < cfg.tau_null))
        throw Error(ErrorCode::InvalidParameter, "tolerances must satisfy 0 < tau_res < tau_null");
    if (!(cfg.init_scale > 0)) throw Error(ErrorCode::InvalidParameter, "init_scale must be positive");
}

namespace {

struct FlatTerm {
    double c;
    int a;
    int b;  // -1 for a linear term
};

struct Flat {
    int n = 0;
    int vars = 0;
    std::vector<std::vector<FlatTerm>> rows;
};

Flat flatten(const HomSystem& sys) {
    Flat f{sys.n, sys.var_count(), {}};
    for (const Constraint& c : sys.constraints) {
        std::vector<FlatTerm> row;
        for (const Term& t : c.terms)
            row.push_back({to_double(t.coeff), t.vars[0], t.vars.size() == 2 ? t.vars[1] : -1});
        f.rows.push_back(std::move(row));
    }
    return f;
}

Eigen::VectorXd residuals(const Flat& f, const Eigen::VectorXd& x) {
    Eigen::VectorXd r(static_cast<Eigen::Index>(f.rows.size()));
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        double s = 0;
        for (const FlatTerm& t : f.rows[i]) s += t.c * x[t.a] * (t.b < 0 ? 1.0 : x[t.b]);
        r[static_cast<Eigen::Index>(i)] = s;
    }
    return r;
}

Eigen::MatrixXd jacobian(const Flat& f, const Eigen::VectorXd& x) {
    Eigen::MatrixXd j = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(f.rows.size()), f.vars);
    for (std::size_t i = 0; i < f.rows.size(); ++i) {
        auto row = static_cast<Eigen::Index>(i);
        for (const FlatTerm& t : f.rows[i]) {
            if (t.b < 0) {
                j(row, t.a) += t.c;
            } else {
                j(row, t.a) += t.c * x[t.b];
                j(row, t.b) += t.c * x[t.a];
            }
        }
    }
    return j;
}

Eigen::VectorXd to_vector(const FloatCandidate& t) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(t.rows() * t.cols()));
    for (std::size_t i = 0; i < t.rows(); ++i)
        for (std::size_t k = 0; k < t.cols(); ++k) x[static_cast<Eigen::Index>(i * t.cols() + k)] = t(i, k);
    return x;
}

FloatCandidate to_matrix(const Eigen::VectorXd& x, int n) {
    FloatCandidate t(n, n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) t(i, k) = x[i * n + k];
    return t;
}

void check_dims(const HomSystem& sys, const FloatCandidate& t) {
    if (static_cast<int>(t.rows()) != sys.n || static_cast<int>(t.cols()) != sys.n)
        throw Error(ErrorCode::DimensionMismatch, "candidate dimension does not match the system");
}

std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

struct RestartResult {
    Eigen::VectorXd x;
    double residual = 0;  // max-norm
    double entry_max = 0;
};

RestartResult run_restart(const Flat& f, const SearchConfig& cfg, int index) {
    std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(index))));
    std::uniform_real_distribution<double> dist(-cfg.init_scale, cfg.init_scale);
    Eigen::VectorXd x(f.vars);
    for (int v = 0; v < f.vars; ++v) x[v] = dist(rng);

    Eigen::VectorXd r = residuals(f, x);
    double cost = r.squaredNorm();
    double lambda = 1e-3;
    const Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(f.vars, f.vars);
    for (int it = 0; it < cfg.max_iterations && cost > 1e-32; ++it) {
        Eigen::MatrixXd j = jacobian(f, x);
        Eigen::MatrixXd a = j.transpose() * j;
        Eigen::VectorXd g = j.transpose() * r;
        bool accepted = false;
        Eigen::VectorXd step;
        while (lambda < 1e16) {
            step = (a + lambda * eye).ldlt().solve(-g);
            Eigen::VectorXd trial = x + step;
            Eigen::VectorXd tr = residuals(f, trial);
            double tc = tr.squaredNorm();
            if (std::isfinite(tc) && tc < cost) {
                x = trial;
                r = tr;
                cost = tc;
                lambda = std::max(lambda / 10, 1e-15);
                accepted = true;
                break;
            }
            lambda *= 10;
        }
        if (!accepted || step.lpNorm<Eigen::Infinity>() < 1e-17) break;
    }
    return {x, r.size() ? r.lpNorm<Eigen::Infinity>() : 0.0, x.size() ? x.lpNorm<Eigen::Infinity>() : 0.0};
}

int worker_count(const SearchConfig& cfg) {
    int threads = cfg.threads;
    if (threads <= 0) {
        if (const char* env = std::getenv("EVOGRAPH_THREADS")) threads = std::atoi(env);
    }
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    return std::clamp(threads, 1, cfg.restarts);
}

std::optional<Rational> snap_rational(double x) {
    for (int q = 1; q <= 64; ++q) {
        double p = std::round(x * q);
        if (std::abs(x - p / q) < 1e-7 * std::max(1.0, std::abs(x)))
            return Rational(static_cast<long long>(p)) / q;
    }
    return std::nullopt;
}

std::optional<RadicalNumber> snap(double x) {
    if (std::abs(x) < 1e-8) return RadicalNumber(0);
    if (auto q = snap_rational(x)) return RadicalNumber(*q);
    // Exponents in sixths, smallest total first.
    for (int total = 1; total <= 16; ++total) {
        for (int a = -8; a <= 8; ++a) {
            for (int b : {total - std::abs(a), -(total - std::abs(a))}) {
                if (std::abs(b) > 8 || std::abs(a) + std::abs(b) != total) continue;
                double base = std::pow(2.0, a / 6.0) * std::pow(3.0, b / 6.0);
                if (auto q = snap_rational(x / base))
                    return *q * RadicalNumber::power(2, a, 6) * RadicalNumber::power(3, b, 6);
                if (b == 0) break;
            }
        }
    }
    return std::nullopt;
}

}  // namespace

double objective(const HomSystem& sys, const FloatCandidate& t) {
    check_dims(sys, t);
    return residuals(flatten(sys), to_vector(t)).squaredNorm();
}

FloatCandidate gradient(const HomSystem& sys, const FloatCandidate& t) {
    check_dims(sys, t);
    Flat f = flatten(sys);
    Eigen::VectorXd x = to_vector(t);
    Eigen::VectorXd g = 2.0 * jacobian(f, x).transpose() * residuals(f, x);
    return to_matrix(g, sys.n);
}

std::optional<HomCandidate> reconstruct(const HomSystem& sys, const FloatCandidate& t) {
    check_dims(sys, t);
    HomCandidate exact(sys.n, sys.n, RadicalNumber(0));
    bool nonzero = false;
    for (int i = 0; i < sys.n; ++i) {
        for (int k = 0; k < sys.n; ++k) {
            auto v = snap(t(i, k));
            if (!v) return std::nullopt;
            nonzero = nonzero || !v->is_zero();
            exact(i, k) = *v;
        }
    }
    if (!nonzero || !residual(sys, exact).zero || !is_homomorphism_direct(sys.graph, exact)) return std::nullopt;
    return exact;
}

std::optional<HomCandidate> closed_form_iso(const Graph& g) {
    const int n = g.order();
    RegularityClass rc = classify_regularity(g);
    HomCandidate t(n, n, RadicalNumber(0));
    if (const auto* reg = std::get_if<Regular>(&rc)) {
        if (reg->k == 0) return std::nullopt;
        const Rational inv = Rational(1) / reg->k;
        for (int i = 0; i < n; ++i) t(i, i) = RadicalNumber(inv);
        // k * (1/k)^2 = 1/k
        if (!(RadicalNumber(inv) * RadicalNumber(inv) * Rational(reg->k) == RadicalNumber(inv)))
            throw Error(ErrorCode::Internal, "regular closed form fails its identity");
    } else if (const auto* bi = std::get_if<Biregular>(&rc)) {
        const Rational k1 = bi->k1, k2 = bi->k2;
        RadicalNumber alpha = RadicalNumber::power(k1 * k1 * k2, -1, 3);
        RadicalNumber beta = RadicalNumber::power(k1 * k2 * k2, -1, 3);
        RadicalNumber lhs_a = alpha * alpha, rhs_a = beta * (Rational(1) / k1);
        RadicalNumber lhs_b = beta * beta, rhs_b = alpha * (Rational(1) / k2);
        auto cube = [](const RadicalNumber& x) { return x * x * x; };
        if (!(lhs_a == rhs_a) || !(lhs_b == rhs_b) || !(cube(lhs_a) == cube(rhs_a)) || !(cube(lhs_b) == cube(rhs_b)))
            throw Error(ErrorCode::Internal, "biregular closed form fails its identities");
        for (int v : bi->part1) t(v - 1, v - 1) = alpha;
        for (int v : bi->part2) t(v - 1, v - 1) = beta;
    } else {
        return std::nullopt;
    }
    if (!is_isomorphism(g, t)) throw Error(ErrorCode::Internal, "closed form is not an isomorphism");
    FloatCandidate approx(n, n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) approx(i, k) = t(i, k).to_double();
    if (residual(derive_constraints(g), approx).max_norm >= 1e-12)
        throw Error(ErrorCode::Internal, "closed form has a large numeric residual");
    return t;
}

SearchOutcome find_homomorphism(const Graph& g, const SearchConfig& cfg) {
    return find_homomorphism(derive_constraints(g), cfg);
}

SearchOutcome find_homomorphism(const HomSystem& sys, const SearchConfig& cfg) {
    validate(cfg);
    const Flat f = flatten(sys);
    std::vector<RestartResult> results(cfg.restarts);
    std::atomic<int> next{0};
    auto work = [&] {
        for (int i = next++; i < cfg.restarts; i = next++) results[i] = run_restart(f, cfg, i);
    };
    const int workers = worker_count(cfg);
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    SearchOutcome out;
    out.restarts = cfg.restarts;
    out.best_residual = std::numeric_limits<double>::infinity();
    for (int i = 0; i < cfg.restarts; ++i) {
        const RestartResult& r = results[i];
        if (r.entry_max < cfg.tau_null) {
            out.null_basin++;
            continue;
        }
        if (r.residual < out.best_residual) {
            out.best_residual = r.residual;
            out.best_restart = i;
        }
        if (r.residual < cfg.tau_res) out.accepted++;
    }
    if (out.accepted == 0) return out;

    for (int i = 0; i < cfg.restarts; ++i) {
        const RestartResult& r = results[i];
        if (r.entry_max < cfg.tau_null || r.residual >= cfg.tau_res) continue;
        FloatCandidate point = to_matrix(r.x, sys.n);
        if (auto exact = reconstruct(sys, point)) {
            out.kind = OutcomeKind::VerifiedHom;
            out.point = point;
            out.residual = r.residual;
            out.isomorphism = is_isomorphism(sys.graph, *exact);
            out.exact = std::move(exact);
            return out;
        }
    }
    out.kind = OutcomeKind::Candidate;
    out.point = to_matrix(results[out.best_restart].x, sys.n);
    out.residual = out.best_residual;
    return out;
}

std::string outcome_to_json(const SearchOutcome& out) {
    nlohmann::json j{{"outcome", outcome_name(out.kind)},
                     {"restarts", out.restarts},
                     {"null_basin", out.null_basin},
                     {"accepted", out.accepted}};
    if (std::isfinite(out.best_residual))
        j["best_residual"] = out.best_residual;
    else
        j["best_residual"] = nullptr;
    if (out.kind != OutcomeKind::NoneFound) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < out.point.rows(); ++i) {
            std::vector<double> row;
            for (std::size_t k = 0; k < out.point.cols(); ++k) row.push_back(out.point(i, k));
            rows.push_back(row);
        }
        j["entries"] = rows;
        j["residual"] = out.residual;
    }
    if (out.exact) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < out.exact->rows(); ++i) {
            std::vector<std::string> row;
            for (std::size_t k = 0; k < out.exact->cols(); ++k) row.push_back((*out.exact)(i, k).str());
            rows.push_back(row);
        }
        j["exact"] = rows;
        j["isomorphism"] = out.isomorphism;
    }
    return j.dump();
}

}  // namespace evograph
