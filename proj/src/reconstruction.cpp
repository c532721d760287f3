#include "coniclines/reconstruction.hpp"

#include <algorithm>
#include <set>

namespace coniclines {

namespace {

// Inverse of n -> binom(n, 2) for n >= 2; empty when t is not triangular.
std::optional<Weight> inverse_binom2(Mult t) {
    if (t < 1)
        return std::nullopt;
    Int disc = Int(8) * t + 1;
    if (!is_perfect_square(disc))
        return std::nullopt;
    Int s = isqrt(disc);
    Int n2 = (s + 1) / 2;
    if (!n2.fits_slong_p())
        return std::nullopt;
    Weight n = n2.get_si();
    return binom2(n) == t ? std::optional<Weight>(n) : std::nullopt;
}

bool contains_point(const std::vector<ProjectivePoint>& pts, const ProjectivePoint& p) {
    return std::find(pts.begin(), pts.end(), p) != pts.end();
}

std::vector<ProjectivePoint> recovered_points(const std::vector<Marking>& ms) {
    std::vector<ProjectivePoint> out;
    out.reserve(ms.size());
    for (const auto& mk : ms)
        out.push_back(mk.point);
    return out;
}

// Lines of r containing none of the given points.
LineConfig strip_lines_through(const LineConfig& r, const std::vector<ProjectivePoint>& pts) {
    LineConfig out;
    for (const auto& [line, mult] : r.entries()) {
        bool hit = false;
        for (const auto& p : pts)
            if (incident(p, line)) {
                hit = true;
                break;
            }
        if (!hit)
            out.add(line, mult);
    }
    return out;
}

LineConfig drop_line(const LineConfig& r, const ProjectiveLine& line) {
    LineConfig out;
    for (const auto& [l, mult] : r.entries())
        if (l != line)
            out.add(l, mult);
    return out;
}

// The residual probe of step 2: lines containing none of recovered[2..],
// with the line through the first two recovered markings removed.
LineConfig residual_probe(const LineConfig& r, const std::vector<Marking>& recovered) {
    std::vector<ProjectivePoint> later;
    for (size_t i = 2; i < recovered.size(); ++i)
        later.push_back(recovered[i].point);
    LineConfig probe = strip_lines_through(r, later);
    return drop_line(probe, line_through(recovered[0].point, recovered[1].point));
}

// Points lying on at least `threshold` distinct lines of r, excluding the
// given ones.
std::vector<ProjectivePoint> points_on_many_lines(const LineConfig& r, int threshold,
                                                  const std::vector<ProjectivePoint>& exclude) {
    std::vector<ProjectiveLine> lines;
    for (const auto& [line, mult] : r.entries())
        lines.push_back(line);
    std::set<ProjectivePoint> seen;
    std::vector<ProjectivePoint> out;
    for (size_t i = 0; i < lines.size(); ++i)
        for (size_t j = i + 1; j < lines.size(); ++j) {
            ProjectivePoint p = intersect_lines(lines[i], lines[j]);
            if (!seen.insert(p).second || contains_point(exclude, p))
                continue;
            int count = 0;
            for (const auto& l : lines)
                if (incident(p, l))
                    ++count;
            if (count >= threshold)
                out.push_back(p);
        }
    return out;
}

std::vector<std::pair<ProjectiveLine, Mult>> lines_through(const LineConfig& r,
                                                           const ProjectivePoint& p) {
    std::vector<std::pair<ProjectiveLine, Mult>> out;
    for (const auto& [line, mult] : r.entries())
        if (incident(p, line))
            out.emplace_back(line, mult);
    return out;
}

} // namespace

const char* to_string(ResidualCase c) {
    switch (c) {
    case ResidualCase::Complete: return "complete";
    case ResidualCase::OneUnitMissing: return "one_unit_missing";
    case ResidualCase::TwoUnitsMissing: return "two_units_missing";
    }
    return "?";
}

MaximalMarkings find_maximal_markings(const LineConfig& r, Weight m) {
    if (r.distinct_count() < 2)
        fail(ErrorCode::not_in_domain, "maximal-marking search needs two distinct lines");

    auto cands = candidate_points(r);
    Mult max_mu = 0;
    for (const auto& p : cands)
        max_mu = std::max(max_mu, mu_point(r, p));
    MaximalMarkings out;
    out.weight = 0;
    for (const auto& p : cands)
        if (mu_point(r, p) == max_mu)
            out.points.push_back(p);
    const Weight n = static_cast<Weight>(out.points.size());

    LineConfig rest = strip_lines_through(r, out.points);
    if (!rest.empty()) {
        auto m_rest = inverse_binom2(rest.total());
        if (!m_rest)
            fail(ErrorCode::not_in_domain, "residual multiplicity is not triangular");
        Weight diff = m - *m_rest;
        if (diff <= 0 || diff % n != 0)
            fail(ErrorCode::not_in_domain, "maximal weight is not integral");
        out.weight = diff / n;
        if (out.weight < 2)
            fail(ErrorCode::not_in_domain, "non-maximal markings exist but maximal weight is 1");
        return out;
    }

    // Every line meets a maximal marking: the profile is either N equal
    // weights or one unit plus N equal weights. Decide by matching the full
    // predicted multiplicity multiset.
    auto multiset = r.multiplicity_multiset();
    std::optional<Weight> all_equal;
    if (m % n == 0 && m / n >= 1) {
        std::vector<Weight> profile(static_cast<size_t>(n), m / n);
        if (predicted_pattern(AbstractMarkedConic::smooth(profile)).line_multiplicities == multiset)
            all_equal = m / n;
    }
    std::optional<Weight> unit_plus;
    if ((m - 1) % n == 0 && (m - 1) / n >= 2) {
        std::vector<Weight> profile(static_cast<size_t>(n), (m - 1) / n);
        profile.push_back(1);
        if (predicted_pattern(AbstractMarkedConic::smooth(profile)).line_multiplicities == multiset)
            unit_plus = (m - 1) / n;
    }
    if (all_equal && unit_plus)
        fail(ErrorCode::ambiguous_completion, "both step-1 weight hypotheses match");
    if (all_equal)
        out.weight = *all_equal;
    else if (unit_plus)
        out.weight = *unit_plus;
    else
        fail(ErrorCode::not_in_domain, "no step-1 weight hypothesis matches");
    return out;
}

PartialMarkings peel_markings(const LineConfig& r, Weight m) {
    if (r.empty())
        fail(ErrorCode::not_in_domain, "cannot peel an empty configuration");

    PartialMarkings out;
    LineConfig working = r;
    Weight rem = m;

    while (true) {
        if (working.empty()) {
            if (rem == 0)
                out.residual = ResidualCase::Complete;
            else if (rem == 1)
                out.residual = ResidualCase::OneUnitMissing;
            else
                fail(ErrorCode::not_in_domain, "markings exhausted with weight left over");
            break;
        }
        if (working.distinct_count() == 1) {
            const auto& [line, mult] = *working.entries().begin();
            if (rem != 2 && mult == 1)
                fail(ErrorCode::not_in_domain, "residual line does not match the remaining weight");
            if (out.recovered.size() < 2)
                fail(ErrorCode::not_in_domain, "residual line with fewer than two recovered markings");
            LineConfig probe = residual_probe(r, out.recovered);
            if (mult == 1) {
                if (probe.distinct_count() == 5) {
                    // One weight-2 marking left; it is the unique point on
                    // three lines of the probe.
                    auto pts = points_on_many_lines(probe, 3, recovered_points(out.recovered));
                    if (pts.size() != 1)
                        fail(ErrorCode::not_in_domain, "weight-2 marking is not uniquely located");
                    out.recovered.push_back({pts.front(), 2});
                    out.residual = ResidualCase::Complete;
                } else if (probe.distinct_count() == 7) {
                    out.residual = ResidualCase::TwoUnitsMissing;
                } else {
                    fail(ErrorCode::not_in_domain, "residual probe has an unexpected shape");
                }
            } else {
                auto w = inverse_binom2(mult);
                if (!w || *w < 3 || *w != rem)
                    fail(ErrorCode::not_in_domain, "residual tangent multiplicity is not binom(w,2)");
                auto pts = points_on_many_lines(probe, 3, recovered_points(out.recovered));
                if (pts.size() != 1)
                    fail(ErrorCode::not_in_domain, "trailing marking is not uniquely located");
                out.recovered.push_back({pts.front(), *w});
                out.residual = ResidualCase::Complete;
            }
            out.working_config = working;
            break;
        }

        MaximalMarkings layer = find_maximal_markings(working, rem);
        for (const auto& p : layer.points)
            out.recovered.push_back({p, layer.weight});
        rem -= layer.weight * static_cast<Weight>(layer.points.size());
        if (rem < 0)
            fail(ErrorCode::not_in_domain, "recovered weights exceed the total");
        working = strip_lines_through(working, layer.points);
    }

    if (out.residual != ResidualCase::Complete) {
        size_t s = out.recovered.size();
        if (out.residual == ResidualCase::OneUnitMissing) {
            if (s == 3)
                out.case_label = 'b';
            else if (s == 4)
                out.case_label = 'd';
        } else {
            if (s == 2)
                out.case_label = 'a';
            else if (s == 3)
                out.case_label = 'c';
            else if (s == 4)
                out.case_label = 'e';
        }
    }
    return out;
}

namespace {

// Builds the conic for a complete marking set and verifies psi == r.
// Returns nothing when the fit fails or the verification does not hold.
std::optional<MarkedConic> assemble_and_verify(const LineConfig& r, std::vector<Marking> markings,
                                               const std::optional<Contact>& hint) {
    std::sort(markings.begin(), markings.end());
    for (size_t i = 0; i + 1 < markings.size(); ++i)
        if (markings[i].point == markings[i + 1].point)
            return std::nullopt;
    try {
        auto find_tangent = [&](const Marking& mk) -> std::optional<ProjectiveLine> {
            // The tangent at a marking is the unique configuration line
            // through it containing no other marking.
            std::optional<ProjectiveLine> tangent;
            for (const auto& [line, mult] : lines_through(r, mk.point)) {
                bool clean = true;
                for (const auto& other : markings)
                    if (other.point != mk.point && incident(other.point, line)) {
                        clean = false;
                        break;
                    }
                if (clean) {
                    if (tangent)
                        return std::nullopt;
                    tangent = line;
                }
            }
            return tangent;
        };

        Conic conic = Conic::veronese_conic();
        if (markings.size() >= 5) {
            std::vector<ProjectivePoint> pts;
            for (size_t i = 0; i < 5; ++i)
                pts.push_back(markings[i].point);
            conic = fit_conic(pts, {});
        } else if (markings.size() == 4) {
            std::optional<Contact> contact = hint;
            if (!contact) {
                for (const auto& mk : markings) {
                    if (mk.weight < 2)
                        continue;
                    if (auto t = find_tangent(mk)) {
                        contact = Contact{mk.point, *t};
                        break;
                    }
                }
            }
            if (!contact)
                return std::nullopt;
            std::vector<ProjectivePoint> pts;
            for (const auto& mk : markings)
                if (mk.point != contact->point)
                    pts.push_back(mk.point);
            conic = fit_conic(pts, {*contact});
        } else if (markings.size() == 3) {
            // Use every identifiable tangent: three give the overdetermined
            // all-contacts shape, two still determine the conic with the
            // third marking as a plain point.
            std::vector<Contact> contacts;
            std::vector<ProjectivePoint> plain;
            for (const auto& mk : markings) {
                std::optional<ProjectiveLine> t;
                if (mk.weight >= 2)
                    t = find_tangent(mk);
                if (t)
                    contacts.push_back({mk.point, *t});
                else
                    plain.push_back(mk.point);
            }
            if (contacts.size() < 2)
                return std::nullopt;
            conic = fit_conic(plain, contacts);
        } else {
            return std::nullopt;
        }

        MarkedConic k(conic, std::move(markings));
        if (psi(k) != r)
            return std::nullopt;
        return k;
    } catch (const Error&) {
        return std::nullopt;
    }
}

// Runs assemble_and_verify over every candidate completion and insists on a
// unique verified result.
MarkedConic unique_verified(const LineConfig& r,
                            const std::vector<std::pair<std::vector<Marking>, std::optional<Contact>>>& attempts) {
    std::vector<MarkedConic> found;
    for (const auto& [markings, hint] : attempts) {
        auto k = assemble_and_verify(r, markings, hint);
        if (!k)
            continue;
        if (std::find(found.begin(), found.end(), *k) == found.end())
            found.push_back(std::move(*k));
    }
    if (found.empty())
        fail(ErrorCode::not_in_domain, "no completion reproduces the configuration");
    if (found.size() > 1)
        fail(ErrorCode::ambiguous_completion, "several completions reproduce the configuration");
    return found.front();
}

// All ways of extending `base` by the required number of unit markings drawn
// from `candidates`.
std::vector<std::pair<std::vector<Marking>, std::optional<Contact>>>
unit_extensions(const std::vector<Marking>& base, const std::vector<ProjectivePoint>& candidates,
                size_t need, const std::optional<Contact>& hint) {
    std::vector<std::pair<std::vector<Marking>, std::optional<Contact>>> out;
    if (candidates.size() < need || candidates.size() > 16)
        return out;
    std::vector<size_t> idx(need);
    auto rec = [&](auto&& self, size_t start, size_t depth) -> void {
        if (depth == need) {
            auto markings = base;
            for (size_t i = 0; i < need; ++i)
                markings.push_back({candidates[idx[i]], 1});
            out.emplace_back(std::move(markings), hint);
            return;
        }
        for (size_t i = start; i < candidates.size(); ++i) {
            idx[depth] = i;
            self(self, i + 1, depth + 1);
        }
    };
    rec(rec, 0, 0);
    return out;
}

std::vector<ProjectivePoint> locate_by_mu(const LineConfig& sub, Mult target,
                                          const std::vector<ProjectivePoint>& exclude) {
    std::vector<ProjectivePoint> out;
    if (sub.distinct_count() < 2)
        return out;
    for (const auto& p : candidate_points(sub)) {
        if (contains_point(exclude, p))
            continue;
        if (mu_point(sub, p) == target)
            out.push_back(p);
    }
    return out;
}

// Bounded search used for the all-threes subcases: at two chosen markings,
// every line of the probe through them avoiding the other recovered markings
// is either the tangent there or a span with a missing unit, so pairing the
// possibilities enumerates all completions. `missing` is 1 or 2.
std::vector<std::pair<std::vector<Marking>, std::optional<Contact>>>
unit_line_search(const LineConfig& probe, const std::vector<Marking>& recovered,
                 size_t qa_idx, size_t qb_idx, size_t missing) {
    std::vector<std::pair<std::vector<Marking>, std::optional<Contact>>> out;
    const ProjectivePoint& qa = recovered[qa_idx].point;
    const ProjectivePoint& qb = recovered[qb_idx].point;

    auto clean_lines = [&](const ProjectivePoint& q) {
        std::vector<ProjectiveLine> ls;
        for (const auto& [line, mult] : lines_through(probe, q)) {
            bool hits_other = false;
            for (const auto& mk : recovered)
                if (mk.point != q && incident(mk.point, line)) {
                    hits_other = true;
                    break;
                }
            if (!hits_other)
                ls.push_back(line);
        }
        return ls;
    };

    auto la = clean_lines(qa);
    auto lb = clean_lines(qb);
    if (missing == 1) {
        // One unit line plus the tangent at each of qa, qb.
        for (const auto& ca : la)
            for (const auto& cb : lb) {
                if (ca == cb)
                    continue;
                ProjectivePoint u = intersect_lines(ca, cb);
                bool clash = false;
                for (const auto& mk : recovered)
                    if (mk.point == u)
                        clash = true;
                if (clash)
                    continue;
                auto markings = recovered;
                markings.push_back({u, 1});
                out.emplace_back(std::move(markings), std::nullopt);
            }
        return out;
    }

    // Two missing units: choose the tangent at each of qa, qb, then pair the
    // two remaining lines at qa with those at qb in both ways.
    for (size_t ta = 0; ta < la.size(); ++ta)
        for (size_t tb = 0; tb < lb.size(); ++tb) {
            std::vector<ProjectiveLine> ra, rb;
            for (size_t i = 0; i < la.size(); ++i)
                if (i != ta)
                    ra.push_back(la[i]);
            for (size_t i = 0; i < lb.size(); ++i)
                if (i != tb)
                    rb.push_back(lb[i]);
            if (ra.size() != 2 || rb.size() != 2)
                continue;
            for (int flip = 0; flip < 2; ++flip) {
                ProjectivePoint u1 = intersect_lines(ra[0], rb[flip]);
                ProjectivePoint u2 = intersect_lines(ra[1], rb[1 - flip]);
                if (u1 == u2)
                    continue;
                bool clash = false;
                for (const auto& mk : recovered)
                    if (mk.point == u1 || mk.point == u2)
                        clash = true;
                if (clash)
                    continue;
                auto markings = recovered;
                markings.push_back({u1, 1});
                markings.push_back({u2, 1});
                out.emplace_back(std::move(markings),
                                 Contact{recovered[qa_idx].point, la[ta]});
            }
        }
    return out;
}

} // namespace

MarkedConic complete_markings(const LineConfig& r, const PartialMarkings& partial, Weight m) {
    const auto& rec = partial.recovered;
    const auto recpts = recovered_points(rec);
    Weight recovered_weight = 0;
    for (const auto& mk : rec)
        recovered_weight += mk.weight;

    if (partial.residual == ResidualCase::Complete) {
        if (recovered_weight != m)
            fail(ErrorCode::not_in_domain, "recovered weights do not sum to the total");
        return unique_verified(r, {{rec, std::nullopt}});
    }

    const size_t missing = partial.residual == ResidualCase::OneUnitMissing ? 1 : 2;
    if (recovered_weight + static_cast<Weight>(missing) != m)
        fail(ErrorCode::not_in_domain, "missing units do not account for the weight gap");
    const size_t s = rec.size();

    if (s >= 5) {
        // With five markings the conic is known; missing units are the
        // candidate points of multiplicity m-1 lying on it.
        std::vector<ProjectivePoint> five(recpts.begin(), recpts.begin() + 5);
        Conic conic = [&] {
            try {
                return fit_conic(five, {});
            } catch (const Error&) {
                fail(ErrorCode::not_in_domain, "recovered markings do not fit a conic");
            }
        }();
        std::vector<ProjectivePoint> units;
        for (const auto& p : candidate_points(r))
            if (!contains_point(recpts, p) && conic.contains(p) && mu_point(r, p) == m - 1)
                units.push_back(p);
        return unique_verified(r, unit_extensions(rec, units, missing, std::nullopt));
    }

    std::vector<std::pair<std::vector<Marking>, std::optional<Contact>>> attempts;

    if (partial.residual == ResidualCase::OneUnitMissing) {
        size_t threes = 0;
        for (const auto& mk : rec)
            threes += mk.weight == 3 ? 1 : 0;
        if (s == 4) {
            // Case d: strip the spans of recovered pairs; the unit is the
            // point on four of the remaining lines.
            LineConfig sub = r;
            for (size_t i = 0; i < rec.size(); ++i)
                for (size_t j = i + 1; j < rec.size(); ++j)
                    sub = drop_line(sub, line_through(rec[i].point, rec[j].point));
            auto units = points_on_many_lines(sub, 4, recpts);
            attempts = unit_extensions(rec, units, 1, std::nullopt);
        } else if (s == 3 && s - threes >= 2) {
            // Case b main route: drop lines through the remaining recovered
            // marking, remove the span of the two chosen non-3 ones; the
            // unit has mu = w_i + w_j in what is left.
            std::vector<size_t> non3;
            for (size_t i = 0; i < rec.size() && non3.size() < 2; ++i)
                if (rec[i].weight != 3)
                    non3.push_back(i);
            std::vector<ProjectivePoint> others;
            for (size_t i = 0; i < rec.size(); ++i)
                if (i != non3[0] && i != non3[1])
                    others.push_back(rec[i].point);
            LineConfig sub = strip_lines_through(r, others);
            sub = drop_line(sub, line_through(rec[non3[0]].point, rec[non3[1]].point));
            auto units = locate_by_mu(sub, rec[non3[0]].weight + rec[non3[1]].weight, recpts);
            attempts = unit_extensions(rec, units, 1, std::nullopt);
        } else if (threes >= 2) {
            // Case b with two or three weight-3 markings: bounded search over
            // the tangent choices at two of them.
            std::vector<size_t> three_idx;
            for (size_t i = 0; i < rec.size() && three_idx.size() < 2; ++i)
                if (rec[i].weight == 3)
                    three_idx.push_back(i);
            attempts = unit_line_search(r, rec, three_idx[0], three_idx[1], 1);
        } else {
            // Residual shapes reachable only far from semistability: try
            // unit lines at every recovered pair.
            for (size_t i = 0; i < rec.size(); ++i)
                for (size_t j = i + 1; j < rec.size(); ++j) {
                    auto more = unit_line_search(r, rec, i, j, 1);
                    attempts.insert(attempts.end(), more.begin(), more.end());
                }
        }
    } else {
        // Two units missing.
        if (s == 2) {
            const Weight m3 = std::min(rec[0].weight, rec[1].weight);
            const Weight m4 = std::max(rec[0].weight, rec[1].weight);
            if (m3 != 3 && m4 != 3) {
                // Case a main route: identify both tangents by multiplicity,
                // intersect the four unit lines pairwise and keep the points
                // of multiplicity m-1.
                auto tangent_of = [&](const Marking& mk,
                                      const ProjectivePoint& other) -> std::optional<ProjectiveLine> {
                    std::optional<ProjectiveLine> t;
                    for (const auto& [line, mult] : lines_through(r, mk.point)) {
                        if (incident(other, line) || mult == mk.weight)
                            continue;
                        if (t)
                            return std::nullopt;
                        t = line;
                    }
                    return t;
                };
                auto t3 = tangent_of(rec[0], rec[1].point);
                auto t4 = tangent_of(rec[1], rec[0].point);
                if (t3 && t4) {
                    ProjectiveLine span = line_through(rec[0].point, rec[1].point);
                    std::vector<ProjectiveLine> unit_lines;
                    for (const auto& p : recpts)
                        for (const auto& [line, mult] : lines_through(r, p))
                            if (line != *t3 && line != *t4 && line != span
                                && std::find(unit_lines.begin(), unit_lines.end(), line) == unit_lines.end())
                                unit_lines.push_back(line);
                    std::vector<ProjectivePoint> units;
                    for (size_t i = 0; i < unit_lines.size(); ++i)
                        for (size_t j = i + 1; j < unit_lines.size(); ++j) {
                            if (unit_lines[i] == unit_lines[j])
                                continue;
                            ProjectivePoint p = intersect_lines(unit_lines[i], unit_lines[j]);
                            if (!contains_point(recpts, p) && !contains_point(units, p)
                                && mu_point(r, p) == m - 1)
                                units.push_back(p);
                        }
                    attempts = unit_extensions(rec, units, 2, Contact{rec[0].point, *t3});
                }
            }
            if (attempts.empty()) {
                // Case a special (two weight-3 markings) or fallback.
                auto more = unit_line_search(r, rec, 0, 1, 2);
                attempts.insert(attempts.end(), more.begin(), more.end());
            }
        } else if (s == 3 || s == 4) {
            // Cases c and e. With a weight other than 3 available the two
            // units appear at multiplicity w+1 after stripping the other
            // recovered markings; otherwise (case e, all threes) reduce to
            // the two-threes search on the stripped configuration.
            std::optional<size_t> off3;
            for (size_t i = 0; i < rec.size(); ++i)
                if (rec[i].weight != 3) {
                    off3 = i;
                    break;
                }
            if (off3) {
                std::vector<ProjectivePoint> others;
                for (size_t i = 0; i < rec.size(); ++i)
                    if (i != *off3)
                        others.push_back(rec[i].point);
                LineConfig sub = strip_lines_through(r, others);
                auto units = locate_by_mu(sub, rec[*off3].weight + 1, recpts);
                attempts = unit_extensions(rec, units, 2, std::nullopt);
            } else if (s == 4) {
                std::vector<ProjectivePoint> dropped{rec[2].point, rec[3].point};
                LineConfig sub = strip_lines_through(r, dropped);
                attempts = unit_line_search(sub, rec, 0, 1, 2);
            } else {
                attempts = unit_line_search(r, rec, 0, 1, 2);
            }
        } else {
            fail(ErrorCode::not_in_domain, "too few recovered markings to complete");
        }
    }

    return unique_verified(r, attempts);
}

MarkedConic reconstruct(const LineConfig& r, Weight m) {
    if (m < 2 || r.empty())
        fail(ErrorCode::not_in_v, "configuration is empty or the weight is too small");
    if (r.total() != binom2(m))
        fail(ErrorCode::inconsistent_total, "total multiplicity must be binom(m,2)");
    if (config_verdict(r).status == Status::Unstable)
        fail(ErrorCode::not_in_v, "configuration is not semistable");

    PartialMarkings partial;
    try {
        partial = peel_markings(r, m);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ambiguous_completion) {
            // Both step-1 hypotheses matched (not expected to be reachable):
            // fall back to the exhaustive inverse.
            auto all = oracle_reconstruct(r, m);
            if (all.size() == 1 && all.front().conic().smooth())
                return all.front();
            fail(ErrorCode::not_in_v, "ambiguous step-1 layer without a unique preimage");
        }
        fail(ErrorCode::not_in_v, e.what());
    }

    MarkedConic k = [&] {
        try {
            return complete_markings(r, partial, m);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::ambiguous_completion)
                throw;
            fail(ErrorCode::not_in_v, e.what());
        }
    }();

    if (!k.conic().smooth())
        fail(ErrorCode::not_in_v, "preimage support is reducible");
    if (psi(k) != r)
        fail(ErrorCode::not_in_v, "reconstruction verification failed");
    return k;
}

std::vector<MarkedConic> oracle_reconstruct(const LineConfig& r, Weight m) {
    if (r.empty() || r.total() != binom2(m))
        fail(ErrorCode::invalid_argument, "oracle requires total multiplicity binom(m,2)");

    std::vector<ProjectivePoint> cands;
    for (const auto& p : candidate_points(r))
        if (mu_point(r, p) >= m - 1)
            cands.push_back(p);

    std::vector<MarkedConic> results;
    auto try_assignment = [&](const std::vector<Marking>& markings) {
        std::vector<std::vector<Contact>> contact_sets;
        if (markings.size() >= 5) {
            contact_sets.push_back({});
        } else if (markings.size() == 4 || markings.size() == 3) {
            // Enumerate tangent lines at the first one or two markings of
            // weight >= 2 from the lines of r through them.
            std::vector<size_t> heavy;
            for (size_t i = 0; i < markings.size(); ++i)
                if (markings[i].weight >= 2)
                    heavy.push_back(i);
            size_t need = markings.size() == 4 ? 1 : 2;
            if (heavy.size() < need)
                return;
            heavy.resize(need);
            std::vector<std::vector<ProjectiveLine>> choices;
            for (size_t hi : heavy) {
                std::vector<ProjectiveLine> ls;
                for (const auto& [line, mult] : lines_through(r, markings[hi].point))
                    ls.push_back(line);
                choices.push_back(std::move(ls));
            }
            if (need == 1) {
                for (const auto& l : choices[0])
                    contact_sets.push_back({Contact{markings[heavy[0]].point, l}});
            } else {
                for (const auto& l1 : choices[0])
                    for (const auto& l2 : choices[1])
                        contact_sets.push_back({Contact{markings[heavy[0]].point, l1},
                                                Contact{markings[heavy[1]].point, l2}});
            }
        } else {
            return; // cannot pin a conic with fewer than three markings
        }

        for (const auto& contacts : contact_sets) {
            try {
                Conic conic = [&] {
                    if (markings.size() >= 5) {
                        std::vector<ProjectivePoint> pts;
                        for (size_t i = 0; i < 5; ++i)
                            pts.push_back(markings[i].point);
                        return fit_conic(pts, {});
                    }
                    std::vector<ProjectivePoint> pts;
                    for (const auto& mk : markings) {
                        bool contacted = false;
                        for (const auto& ct : contacts)
                            if (ct.point == mk.point)
                                contacted = true;
                        if (!contacted)
                            pts.push_back(mk.point);
                    }
                    return fit_conic(pts, contacts);
                }();
                MarkedConic k(conic, markings);
                if (psi(k) == r
                    && std::find(results.begin(), results.end(), k) == results.end())
                    results.push_back(std::move(k));
            } catch (const Error&) {
                // inconsistent contact choice or degenerate fit: skip
            }
        }
    };

    // Depth-first assignment of weights to a growing subset of candidates,
    // pruned by the multiplicity a marking of that weight must carry and by
    // the span multiplicities between chosen markings.
    std::vector<Marking> chosen;
    auto rec = [&](auto&& self, size_t start, Weight left) -> void {
        if (left == 0) {
            if (chosen.size() >= 3)
                try_assignment(chosen);
            return;
        }
        if (start >= cands.size())
            return;
        for (size_t i = start; i < cands.size(); ++i) {
            const auto& p = cands[i];
            Mult mu = mu_point(r, p);
            for (Weight w = 1; w <= std::min<Weight>(left, m - 1); ++w) {
                if (mu < w * (m - w) + binom2(w))
                    continue;
                bool spans_ok = true;
                for (const auto& mk : chosen)
                    if (r.mu_line(line_through(mk.point, p)) < mk.weight * w) {
                        spans_ok = false;
                        break;
                    }
                if (!spans_ok)
                    continue;
                chosen.push_back({p, w});
                self(self, i + 1, left - w);
                chosen.pop_back();
            }
        }
    };
    rec(rec, 0, m);

    std::sort(results.begin(), results.end(), [](const MarkedConic& a, const MarkedConic& b) {
        if (a.conic().coeffs() != b.conic().coeffs())
            return a.conic().coeffs() < b.conic().coeffs();
        return a.markings() < b.markings();
    });
    return results;
}

} // namespace coniclines
