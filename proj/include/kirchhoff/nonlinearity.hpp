#ifndef KIRCHHOFF_NONLINEARITY_HPP
#define KIRCHHOFF_NONLINEARITY_HPP

#include "kirchhoff/types.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace kirchhoff {

/// Nonlinearity f(x,u), its u-antiderivative F (with F(x,0)=0), and the
/// u-derivative fu. The growth exponent p > 4 tags the superquartic rate;
/// odd marks f(x,-u) = -f(x,u).
template <typename Scalar = double>
struct NonlinearitySpec {
    using Evaluator = std::function<Scalar(const Point<Scalar>&, Scalar)>;
    Evaluator f;
    Evaluator F;
    Evaluator fu;
    Scalar p = Scalar(5);
    bool odd = false;
    std::string name;
};

namespace detail {

/// x^4/4 - x^3/3 + x^2/2 - x + log1p(x) for x >= 0, evaluated by its
/// alternating tail series sum_{k>=5} (-1)^(k+1) x^k / k when x is small;
/// the terms through x^4 cancel against log1p(x) there.
template <typename Scalar>
Scalar quartic_log_remainder(Scalar x) {
    using std::log1p;
    if (x >= Scalar(0.5)) {
        return x * x * x * x / Scalar(4) - x * x * x / Scalar(3) + x * x / Scalar(2) - x +
               log1p(x);
    }
    Scalar xpow = x * x * x * x * x;
    Scalar acc = Scalar(0);
    Scalar sign = Scalar(1);
    for (int k = 5; k < 200; ++k) {
        const Scalar contrib = sign * xpow / Scalar(k);
        acc += contrib;
        if (std::abs(contrib) < std::numeric_limits<Scalar>::epsilon() * std::abs(acc)) break;
        xpow *= x;
        sign = -sign;
    }
    return acc;
}

}  // namespace detail

/// f(x,u) = u^3 ln(1+|u|): 4-superlinear but failing the Ambrosetti-Rabinowitz
/// bound, since u f / F -> 4. F is the closed-form antiderivative of f.
template <typename Scalar = double>
NonlinearitySpec<Scalar> builtin_log_power() {
    using std::abs;
    using std::log1p;
    NonlinearitySpec<Scalar> nl;
    nl.name = "log_power";
    nl.p = Scalar(5);
    nl.odd = true;
    nl.f = [](const Point<Scalar>&, Scalar u) { return u * u * u * log1p(abs(u)); };
    nl.F = [](const Point<Scalar>&, Scalar u) {
        const Scalar x = abs(u);
        const Scalar u4 = u * u * u * u;
        return u4 * log1p(x) / Scalar(4) - detail::quartic_log_remainder(x) / Scalar(4);
    };
    nl.fu = [](const Point<Scalar>&, Scalar u) {
        const Scalar x = abs(u);
        return Scalar(3) * u * u * log1p(x) + u * u * x / (Scalar(1) + x);
    };
    return nl;
}

/// Reference family f(x,u) = |u|^(p-2) u, F = |u|^p / p, for p > 4.
template <typename Scalar = double>
NonlinearitySpec<Scalar> builtin_pure_power(Scalar p) {
    using std::abs;
    using std::pow;
    if (!(p > Scalar(4)))
        throw config_error("pure_power requires growth exponent p > 4");
    NonlinearitySpec<Scalar> nl;
    nl.name = "pure_power";
    nl.p = p;
    nl.odd = true;
    nl.f = [p](const Point<Scalar>&, Scalar u) { return pow(abs(u), p - Scalar(2)) * u; };
    nl.F = [p](const Point<Scalar>&, Scalar u) { return pow(abs(u), p) / p; };
    nl.fu = [p](const Point<Scalar>&, Scalar u) {
        return (p - Scalar(1)) * pow(abs(u), p - Scalar(2));
    };
    return nl;
}

/// u f(x,u) / F(x,u), the Ambrosetti-Rabinowitz quotient. Equals p for the
/// pure power family; tends to 4 from above for log_power.
template <typename Scalar>
Scalar ar_ratio(const NonlinearitySpec<Scalar>& nl, Scalar u, const Point<Scalar>& x) {
    if (u == Scalar(0)) throw domain_error("ar_ratio: u must be nonzero");
    const Scalar Fv = nl.F(x, u);
    if (!(Fv > Scalar(0))) throw domain_error("ar_ratio: F(x,u) must be positive");
    return u * nl.f(x, u) / Fv;
}

enum class Verdict { consistent, violated, inconclusive };

inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::consistent: return "consistent";
        case Verdict::violated: return "violated";
        default: return "inconclusive";
    }
}

template <typename Scalar = double>
struct SampleRow {
    Point<Scalar> x;
    Scalar u;
    Scalar ratio;
};

template <typename Scalar = double>
struct HypothesisCheck {
    std::string hypothesis;  // "f2", "f3", "f4", "f5", "AR"
    Verdict status = Verdict::inconclusive;
    std::vector<SampleRow<Scalar>> witnesses;  // nonempty whenever status == violated
    std::vector<SampleRow<Scalar>> samples;    // the ratio table that was inspected
    std::string note;
};

/// Sampled verdicts for (f2)-(f5) and (AR). Sampling can report consistency
/// or produce a concrete counterexample; it can never prove an asymptotic
/// hypothesis, hence the three-valued status.
template <typename Scalar = double>
struct HypothesisReport {
    std::vector<HypothesisCheck<Scalar>> checks;

    const HypothesisCheck<Scalar>* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.hypothesis == name) return &c;
        return nullptr;
    }
    Verdict verdict(const std::string& name) const {
        const auto* c = find(name);
        return c ? c->status : Verdict::inconclusive;
    }
};

namespace detail {

template <typename Scalar>
bool nearly_nondecreasing(Scalar prev, Scalar next) {
    return next >= prev - Scalar(1e-12) * (std::abs(prev) + std::abs(next));
}

}  // namespace detail

/// Samples the hypotheses over the given u values (both signs as provided)
/// at every x in x_samples. u magnitudes should span at least four decades
/// for the asymptotic checks to say anything.
template <typename Scalar>
HypothesisReport<Scalar> check_hypotheses(const NonlinearitySpec<Scalar>& nl,
                                          const std::vector<Scalar>& u_samples,
                                          const std::vector<Point<Scalar>>& x_samples) {
    using std::abs;
    if (u_samples.empty()) throw config_error("check_hypotheses: empty u sample set");
    if (x_samples.empty()) throw config_error("check_hypotheses: empty x sample set");

    std::vector<Scalar> us;
    for (Scalar u : u_samples)
        if (u != Scalar(0)) us.push_back(u);  // ratios below are undefined at u = 0
    std::sort(us.begin(), us.end(), [](Scalar a, Scalar b) { return abs(a) < abs(b); });
    if (us.empty()) throw config_error("check_hypotheses: need nonzero u samples");
    const Scalar max_mag = abs(us.back());

    HypothesisReport<Scalar> report;

    // (f2): f(x,u)/u must fade to zero as |u| -> 0.
    {
        HypothesisCheck<Scalar> c;
        c.hypothesis = "f2";
        std::vector<SampleRow<Scalar>> small;
        for (const auto& x : x_samples)
            for (Scalar u : us)
                if (abs(u) <= Scalar(1)) small.push_back({x, u, nl.f(x, u) / u});
        c.samples = small;
        if (small.size() < 3) {
            c.status = Verdict::inconclusive;
            c.note = "need at least 3 samples with |u| <= 1";
        } else {
            c.status = Verdict::consistent;
            Scalar lo = std::numeric_limits<Scalar>::max(), hi = Scalar(0);
            Scalar mag_lo = std::numeric_limits<Scalar>::max();
            for (const auto& row : small) {
                hi = std::max(hi, abs(row.ratio));
                if (abs(row.u) < mag_lo) {
                    mag_lo = abs(row.u);
                    lo = abs(row.ratio);
                }
            }
            if (!(lo <= Scalar(1e-3) * std::max(hi, Scalar(1e-300)))) {
                c.status = Verdict::violated;
                for (const auto& row : small)
                    if (abs(row.u) == mag_lo) {
                        c.witnesses.push_back(row);
                        break;
                    }
                c.note = "f/u does not vanish at the smallest sampled |u|";
            }
        }
        report.checks.push_back(std::move(c));
    }

    // (f3): F(x,u)/u^4 must keep growing across the largest sampled decade.
    {
        HypothesisCheck<Scalar> c;
        c.hypothesis = "f3";
        const Scalar cutoff = max_mag / Scalar(10);
        for (const auto& x : x_samples) {
            std::vector<SampleRow<Scalar>> top;
            for (Scalar u : us)
                if (abs(u) >= cutoff) {
                    const Scalar u4 = u * u * u * u;
                    top.push_back({x, u, nl.F(x, u) / u4});
                }
            c.samples.insert(c.samples.end(), top.begin(), top.end());
            if (top.size() < 2) continue;
            for (std::size_t i = 1; i < top.size(); ++i) {
                if (abs(top[i].u) == abs(top[i - 1].u)) continue;
                if (!(top[i].ratio > top[i - 1].ratio *
                                         (Scalar(1) + Scalar(1e-12)))) {
                    c.status = Verdict::violated;
                    c.witnesses.push_back(top[i - 1]);
                    c.witnesses.push_back(top[i]);
                    c.note = "F/u^4 fails to increase over the top decade";
                }
            }
        }
        if (c.status != Verdict::violated) {
            if (c.samples.size() < 3) {
                c.status = Verdict::inconclusive;
                c.note = "too few samples in the largest decade";
            } else {
                Scalar first = c.samples.front().ratio, last = c.samples.back().ratio;
                if (last > first * (Scalar(1) + Scalar(1e-3))) {
                    c.status = Verdict::consistent;
                } else {
                    c.status = Verdict::inconclusive;
                    c.note = "growth across the top decade below resolution";
                }
            }
        }
        report.checks.push_back(std::move(c));
    }

    // (f4): f(x,u)/u^3 positive off zero, nonincreasing on u<0, nondecreasing on u>0.
    {
        HypothesisCheck<Scalar> c;
        c.hypothesis = "f4";
        c.status = Verdict::consistent;
        for (const auto& x : x_samples) {
            std::vector<SampleRow<Scalar>> pos, neg;
            for (Scalar u : us) {
                const Scalar w = nl.f(x, u) / (u * u * u);
                const SampleRow<Scalar> row{x, u, w};
                c.samples.push_back(row);
                if (!(w > Scalar(0))) {
                    c.status = Verdict::violated;
                    c.witnesses.push_back(row);
                    c.note = "f/u^3 not positive off zero";
                }
                (u > Scalar(0) ? pos : neg).push_back(row);
            }
            auto by_u = [](const SampleRow<Scalar>& a, const SampleRow<Scalar>& b) {
                return a.u < b.u;
            };
            std::sort(pos.begin(), pos.end(), by_u);
            std::sort(neg.begin(), neg.end(), by_u);
            for (std::size_t i = 1; i < pos.size(); ++i)
                if (!detail::nearly_nondecreasing(pos[i - 1].ratio, pos[i].ratio)) {
                    c.status = Verdict::violated;
                    c.witnesses.push_back(pos[i]);
                    c.note = "f/u^3 decreases on (0,inf)";
                }
            for (std::size_t i = 1; i < neg.size(); ++i)
                if (!detail::nearly_nondecreasing(neg[i].ratio, neg[i - 1].ratio)) {
                    c.status = Verdict::violated;
                    c.witnesses.push_back(neg[i]);
                    c.note = "f/u^3 increases on (-inf,0)";
                }
        }
        report.checks.push_back(std::move(c));
    }

    // (f5): exact oddness of f in u.
    {
        HypothesisCheck<Scalar> c;
        c.hypothesis = "f5";
        c.status = Verdict::consistent;
        for (const auto& x : x_samples)
            for (Scalar u : us) {
                const Scalar defect = nl.f(x, -u) + nl.f(x, u);
                c.samples.push_back({x, u, defect});
                if (defect != Scalar(0)) {
                    c.status = Verdict::violated;
                    c.witnesses.push_back({x, u, defect});
                    c.note = "f(x,-u) != -f(x,u)";
                }
            }
        report.checks.push_back(std::move(c));
    }

    // (AR): u f / F must stay above some mu > 4 for all large |u|. A sampled
    // margin over 4 that keeps collapsing marks the condition as failing.
    {
        HypothesisCheck<Scalar> c;
        c.hypothesis = "AR";
        const Scalar cutoff = max_mag / Scalar(100);
        std::vector<SampleRow<Scalar>> tail;
        const auto& x0 = x_samples.front();
        for (Scalar u : us)
            if (abs(u) >= cutoff && u > Scalar(0)) {
                const Scalar Fv = nl.F(x0, u);
                if (Fv > Scalar(0)) tail.push_back({x0, u, u * nl.f(x0, u) / Fv});
            }
        c.samples = tail;
        if (tail.size() < 3) {
            c.status = Verdict::inconclusive;
            c.note = "too few positive samples in the top two decades";
        } else {
            bool below4 = false, decreasing = true;
            for (std::size_t i = 0; i < tail.size(); ++i) {
                if (tail[i].ratio <= Scalar(4)) {
                    below4 = true;
                    c.witnesses.push_back(tail[i]);
                }
                if (i > 0 && !(tail[i].ratio < tail[i - 1].ratio)) decreasing = false;
            }
            const Scalar margin_first = tail.front().ratio - Scalar(4);
            const Scalar margin_last = tail.back().ratio - Scalar(4);
            if (below4) {
                c.status = Verdict::violated;
                c.note = "sampled ratio at or below 4";
            } else if (decreasing &&
                       margin_first - margin_last > Scalar(0.25) * margin_first) {
                c.status = Verdict::violated;
                c.witnesses.push_back(tail.back());
                c.note = "margin over mu=4 collapsing along the sampled tail";
            } else if (margin_last > Scalar(0.1)) {
                c.status = Verdict::consistent;
            } else {
                c.status = Verdict::inconclusive;
                c.note = "margin over 4 too small to classify";
            }
        }
        report.checks.push_back(std::move(c));
    }

    for (const auto& c : report.checks)
        if (c.status == Verdict::violated && c.witnesses.empty())
            throw std::logic_error("hypothesis report: violated verdict without witness");
    return report;
}

template <typename Scalar>
std::string report_to_table(const HypothesisReport<Scalar>& report) {
    std::ostringstream out;
    out << "hypothesis  verdict       witness\n";
    for (const auto& c : report.checks) {
        out << c.hypothesis;
        for (std::size_t i = c.hypothesis.size(); i < 12; ++i) out << ' ';
        std::string v = to_string(c.status);
        out << v;
        for (std::size_t i = v.size(); i < 14; ++i) out << ' ';
        if (!c.witnesses.empty()) {
            const auto& w = c.witnesses.front();
            out << "x=(" << static_cast<double>(w.x[0]) << "," << static_cast<double>(w.x[1])
                << ") u=" << static_cast<double>(w.u)
                << " ratio=" << static_cast<double>(w.ratio);
        } else {
            out << "-";
        }
        if (!c.note.empty()) out << "  [" << c.note << "]";
        out << "\n";
    }
    return out.str();
}

template <typename Scalar>
std::string report_to_csv(const HypothesisReport<Scalar>& report) {
    std::ostringstream out;
    out << "hypothesis,verdict,x,y,u,ratio\n";
    for (const auto& c : report.checks)
        for (const auto& row : c.samples)
            out << c.hypothesis << "," << to_string(c.status) << ","
                << static_cast<double>(row.x[0]) << "," << static_cast<double>(row.x[1]) << ","
                << static_cast<double>(row.u) << "," << static_cast<double>(row.ratio) << "\n";
    return out.str();
}

}  // namespace kirchhoff

#endif
