#include "halphen/equioscillation.hpp"

#include <algorithm>

namespace halphen {

bool EquioscillationCertificate::structurally_valid(const Interval& domain) const {
    if (degenerate) return true;
    if (points.size() != signs.size() || points.size() < 2) return false;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!domain.contains(points[i])) return false;
        if (i > 0 && !(points[i - 1] < points[i])) return false;
        if (signs[i] != 1 && signs[i] != -1) return false;
        if (i > 0 && signs[i] == signs[i - 1]) return false;
    }
    return sign(levelled_error) >= 0;
}

Extremum golden_max_abs(const RealFunction& err, const Real& a_in, const Real& b_in) {
    static const Real invphi = (sqrt(Real(5)) - Real(1)) / Real(2);
    Real a = a_in, b = b_in;
    Real fa = abs(err(a)), fb = abs(err(b));
    Real c = b - invphi * (b - a);
    Real d = a + invphi * (b - a);
    Real ec = err(c), ed = err(d);
    Real fc = abs(ec), fd = abs(ed);
    // Width target sqrt(eps): quadratic extrema lose nothing below that scale.
    const Real widthtol = sqrt(machine_epsilon()) * max(abs(a), abs(b)) + machine_epsilon();
    for (int it = 0; it < 120 && (b - a) > widthtol; ++it) {
        if (fc > fd) {
            b = d;
            d = c;
            ed = ec;
            fd = fc;
            c = b - invphi * (b - a);
            ec = err(c);
            fc = abs(ec);
        } else {
            a = c;
            c = d;
            ec = ed;
            fc = fd;
            d = a + invphi * (b - a);
            ed = err(d);
            fd = abs(ed);
        }
    }
    Extremum best = fc > fd ? Extremum{c, ec} : Extremum{d, ed};
    // Endpoints can carry the segment maximum (boundary extrema).
    if (fa > abs(best.value)) best = {a_in, err(a_in)};
    if (fb > abs(best.value)) best = {b_in, err(b_in)};
    return best;
}

std::vector<Extremum> exchange_extrema(const RealFunction& err, const std::vector<Real>& refs,
                                       const Interval& domain) {
    // Split the domain at zeros of the error (one between each sign change of
    // consecutive reference values); on each piece the error has one sign, so
    // |err| is unimodal there and golden refinement is safe.
    std::vector<Real> ev(refs.size());
    for (std::size_t i = 0; i < refs.size(); ++i) ev[i] = err(refs[i]);

    std::vector<Real> cuts;
    cuts.push_back(domain.lo);
    for (std::size_t i = 0; i + 1 < refs.size(); ++i) {
        int sa = sign(ev[i]), sb = sign(ev[i + 1]);
        if (sa == 0 || sb == 0 || sa == sb) continue;  // no bracketed crossing
        Real a = refs[i], b = refs[i + 1];
        for (int it = 0; it < 30; ++it) {
            Real mid = (a + b) / Real(2);
            int sm = sign(err(mid));
            if (sm == 0) {
                a = b = mid;
                break;
            }
            (sm == sa ? a : b) = mid;
        }
        Real z = (a + b) / Real(2);
        if (z > cuts.back() && z < domain.hi) cuts.push_back(z);
    }
    cuts.push_back(domain.hi);

    std::vector<Extremum> out;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        out.push_back(golden_max_abs(err, cuts[i], cuts[i + 1]));
    std::sort(out.begin(), out.end(),
              [](const Extremum& l, const Extremum& r) { return l.x < r.x; });
    return out;
}

std::vector<Extremum> select_alternating(std::vector<Extremum> cands, std::size_t want) {
    // Drop exact zeros; they carry no sign information.
    cands.erase(std::remove_if(cands.begin(), cands.end(),
                               [](const Extremum& e) { return sign(e.value) == 0; }),
                cands.end());
    if (cands.empty()) return {};

    // Collapse same-sign runs, keeping the largest |value| in each run.
    std::vector<Extremum> runs;
    for (auto& e : cands) {
        if (!runs.empty() && sign(runs.back().value) == sign(e.value)) {
            if (abs(e.value) > abs(runs.back().value)) runs.back() = e;
        } else {
            runs.push_back(e);
        }
    }
    // Trim the weaker endpoint until the count fits.
    while (runs.size() > want) {
        if (abs(runs.front().value) < abs(runs.back().value))
            runs.erase(runs.begin());
        else
            runs.pop_back();
    }
    return runs;
}

}  // namespace halphen
