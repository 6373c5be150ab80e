#pragma once

/* Minimal free resolutions over the bounded-degree Steenrod algebra, the
 * resulting Ext charts, the hypersurface differential patterns, and chart
 * rendering.
 *
 * A stage of the resolution is a free module with generators in recorded
 * degrees; its degree-t slice has basis (generator, admissible word).  The
 * boundary of each generator is stored as an element one stage down, and
 * kernels are computed degree by degree with F_p Gaussian elimination.
 * Minimality means new generators are added only for the part of a kernel
 * not already reachable by positive-degree operations, so dim Ext^{s,t} is
 * the number of stage-s generators in degree t. */

#include <hypermono/steenrod.hpp>
#include <hypermono/thom.hpp>

#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hypermono {

namespace detail {

/* reduced row echelon basis maintained incrementally; add returns true when
 * the vector enlarges the span */
struct SpanTracker {
    int p;
    std::vector<std::vector<int>> rows; /* each with leading coefficient 1 */
    std::vector<std::size_t> pivots;

    static int inverse_mod(int a, int p)
    {
        int r = 1;
        for (int e = 0; e < p - 2; ++e)
            r = r * a % p;
        return r;
    }

    bool add(std::vector<int> v)
    {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            int c = v[pivots[i]] % p;
            if (c == 0)
                continue;
            for (std::size_t j = 0; j < v.size(); ++j)
                v[j] = ((v[j] - c * rows[i][j]) % p + p) % p;
        }
        std::size_t pivot = v.size();
        for (std::size_t j = 0; j < v.size(); ++j)
            if (v[j] % p != 0) {
                pivot = j;
                break;
            }
        if (pivot == v.size())
            return false;
        int inv = inverse_mod(v[pivot] % p, p);
        for (std::size_t j = 0; j < v.size(); ++j)
            v[j] = v[j] * inv % p;
        rows.push_back(std::move(v));
        pivots.push_back(pivot);
        return true;
    }
};

/* basis of the nullspace of the linear map with columns a[.][i]; cols is
 * passed explicitly so a map into the zero space keeps its source dimension */
inline std::vector<std::vector<int>> nullspace(std::vector<std::vector<int>> a,
                                               std::size_t cols, int p)
{
    std::size_t rows = a.size();
    std::vector<std::size_t> pivot_of_col(cols, std::size_t(-1));
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t sel = rows;
        for (std::size_t r = rank; r < rows; ++r)
            if (a[r][col] % p != 0) {
                sel = r;
                break;
            }
        if (sel == rows)
            continue;
        std::swap(a[rank], a[sel]);
        int inv = SpanTracker::inverse_mod(((a[rank][col] % p) + p) % p, p);
        for (std::size_t j = 0; j < cols; ++j)
            a[rank][j] = ((a[rank][j] * inv) % p + p) % p;
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank)
                continue;
            int c = ((a[r][col] % p) + p) % p;
            if (c == 0)
                continue;
            for (std::size_t j = 0; j < cols; ++j)
                a[r][j] = ((a[r][j] - c * a[rank][j]) % p + p) % p;
        }
        pivot_of_col[col] = rank;
        ++rank;
    }
    std::vector<std::vector<int>> basis;
    for (std::size_t col = 0; col < cols; ++col) {
        if (pivot_of_col[col] != std::size_t(-1))
            continue;
        std::vector<int> v(cols, 0);
        v[col] = 1;
        for (std::size_t c2 = 0; c2 < cols; ++c2)
            if (pivot_of_col[c2] != std::size_t(-1)) {
                int entry = a[pivot_of_col[c2]][col];
                v[c2] = ((-entry) % p + p) % p;
            }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace detail

struct DifferentialAnnotation {
    int r = 2;
    int source_stem = 0, source_s = 0;
    int target_stem = 0, target_s = 0;
    enum class Kind { always_iso, iso_iff_d_mod_8_is_4, undecided } kind =
        Kind::always_iso;
};

struct ExtChart {
    int p = 2;
    long d = 0;
    std::string residue_context;
    int s_max = 0;
    int n_max = 0;
    std::vector<std::vector<int>> dims; /* [s][stem] */
    std::vector<DifferentialAnnotation> differentials;

    int dim(int s, int stem) const
    {
        if (s < 0 || s > s_max || stem < 0 || stem > n_max)
            return 0;
        return dims[std::size_t(s)][std::size_t(stem)];
    }

    bool operator==(const ExtChart& other) const
    {
        return p == other.p && s_max == other.s_max && n_max == other.n_max &&
               dims == other.dims;
    }
};

namespace detail {

/* one stage of the resolution under construction */
struct Stage {
    std::vector<int> gen_degrees;
    /* boundary of each generator: a module vector for stage 0, otherwise an
     * element of the previous stage */
    std::vector<std::vector<int>> images_in_module;
    std::vector<std::map<std::pair<std::size_t, Word>, int>> images_in_stage;
    /* kernel bases per degree, as coordinates over basis_at(degree) */
    std::map<int, std::vector<std::vector<int>>> kernels;
    std::map<int, std::vector<std::pair<std::size_t, Word>>> basis_cache;

    const std::vector<std::pair<std::size_t, Word>>& basis_at(int p, int t)
    {
        auto it = basis_cache.find(t);
        if (it != basis_cache.end())
            return it->second;
        std::vector<std::pair<std::size_t, Word>> basis;
        for (std::size_t g = 0; g < gen_degrees.size(); ++g) {
            int rem = t - gen_degrees[g];
            if (rem < 0)
                continue;
            for (const Word& w : admissible_monomials(p, rem, t + 1))
                basis.emplace_back(g, w);
        }
        return basis_cache.emplace(t, std::move(basis)).first->second;
    }
};

/* left-multiply a stage element written on basis coordinates by one letter,
 * returning coordinates in the target degree of the same stage */
inline std::vector<int>
letter_times(int p, int letter, const std::vector<int>& coords,
             const std::vector<std::pair<std::size_t, Word>>& from_basis,
             const std::vector<std::pair<std::size_t, Word>>& to_basis,
             const std::map<std::pair<std::size_t, Word>, std::size_t>& to_index)
{
    std::vector<int> out(to_basis.size(), 0);
    for (std::size_t i = 0; i < from_basis.size(); ++i) {
        if (coords[i] % p == 0)
            continue;
        Word w{letter};
        w.insert(w.end(), from_basis[i].second.begin(),
                 from_basis[i].second.end());
        SteenrodElement e = adem_reduce(p, w, coords[i], word_degree(p, w) + 1);
        for (const auto& [word, c] : e.terms) {
            auto it = to_index.find({from_basis[i].first, word});
            if (it == to_index.end())
                throw std::logic_error("letter_times: missing basis element");
            out[it->second] = (out[it->second] + c) % p;
        }
    }
    return out;
}

inline ExtChart resolve_chart(const SteenrodModule& m, int s_max, int n_max)
{
    int t_need = n_max + s_max;
    if (t_need > m.T)
        throw std::logic_error("resolve_chart: module too short");

    int p = m.p;
    /* module basis indices per degree */
    std::map<int, std::vector<std::size_t>> module_slice;
    for (std::size_t k = 0; k < m.basis_count; ++k)
        module_slice[m.degree_of(k)].push_back(k);

    std::vector<int> letters; /* positive-degree algebra generators */
    if (p == 2) {
        for (int i = 1; i <= t_need; ++i)
            letters.push_back(i);
    } else {
        letters.push_back(0);
        for (int i = 1; 4 * i <= t_need; ++i)
            letters.push_back(i);
    }

    std::vector<detail::Stage> stages(std::size_t(s_max) + 2);
    ExtChart chart;
    chart.p = p;
    chart.d = m.d;
    chart.s_max = s_max;
    chart.n_max = n_max;
    chart.dims.assign(std::size_t(s_max) + 1,
                      std::vector<int>(std::size_t(n_max) + 1, 0));
    if (p == 2)
        chart.residue_context = "d even";
    else
        chart.residue_context =
            m.d % 3 == 0 ? "d divisible by 3" : "d not divisible by 3";

    for (int t = 0; t <= t_need; ++t) {
        /* stage 0 generators: the part of M_t not hit by A^+ M */
        {
            detail::SpanTracker span{p, {}, {}};
            const auto& slice = module_slice[t];
            std::map<std::size_t, std::size_t> position;
            for (std::size_t j = 0; j < slice.size(); ++j)
                position[slice[j]] = j;
            if (!slice.empty()) {
                for (int letter : letters) {
                    for (std::size_t k = 0; k < m.basis_count; ++k) {
                        if (m.degree_of(k) + letter_degree(p, letter) != t)
                            continue;
                        std::vector<int> v(slice.size(), 0);
                        bool nonzero = false;
                        for (const auto& [target, coeff] :
                             m.apply_letter(letter, k)) {
                            v[position.at(target)] = ((coeff % p) + p) % p;
                            nonzero = true;
                        }
                        if (nonzero)
                            span.add(std::move(v));
                    }
                }
                for (std::size_t j = 0; j < slice.size(); ++j) {
                    std::vector<int> v(slice.size(), 0);
                    v[j] = 1;
                    if (span.add(std::move(v))) {
                        stages[0].gen_degrees.push_back(t);
                        std::vector<int> image(m.basis_count, 0);
                        image[slice[j]] = 1;
                        stages[0].images_in_module.push_back(std::move(image));
                    }
                }
            }
        }

        for (int s = 0; s <= s_max; ++s) {
            detail::Stage& stage = stages[std::size_t(s)];
            const auto& basis = stage.basis_at(p, t);
            if (s <= s_max && t - s >= 0 && t - s <= n_max) {
                int count = 0;
                for (int deg : stage.gen_degrees)
                    if (deg == t)
                        ++count;
                chart.dims[std::size_t(s)][std::size_t(t - s)] = count;
            }
            if (basis.empty()) {
                stage.kernels[t] = {};
                continue;
            }

            /* boundary matrix at degree t, columns = basis elements */
            std::vector<std::vector<int>> columns;
            std::size_t target_dim = 0;
            if (s == 0) {
                const auto& slice = module_slice[t];
                target_dim = slice.size();
                std::map<std::size_t, std::size_t> position;
                for (std::size_t j = 0; j < slice.size(); ++j)
                    position[slice[j]] = j;
                for (const auto& [g, w] : basis) {
                    std::vector<int> full =
                        apply_word(m, w, stage.images_in_module[g]);
                    std::vector<int> v(target_dim, 0);
                    for (std::size_t k = 0; k < m.basis_count; ++k)
                        if (full[k] % p != 0)
                            v[position.at(k)] = full[k] % p;
                    columns.push_back(std::move(v));
                }
            } else {
                detail::Stage& prev = stages[std::size_t(s - 1)];
                const auto& target_basis = prev.basis_at(p, t);
                target_dim = target_basis.size();
                std::map<std::pair<std::size_t, Word>, std::size_t> index;
                for (std::size_t j = 0; j < target_basis.size(); ++j)
                    index[target_basis[j]] = j;
                for (const auto& [g, w] : basis) {
                    std::vector<int> v(target_dim, 0);
                    for (const auto& [gw, c] : stage.images_in_stage[g]) {
                        Word concat = w;
                        concat.insert(concat.end(), gw.second.begin(),
                                      gw.second.end());
                        SteenrodElement e =
                            adem_reduce(p, concat, c, word_degree(p, concat) + 1);
                        for (const auto& [word, cc] : e.terms) {
                            auto it = index.find({gw.first, word});
                            if (it == index.end())
                                throw std::logic_error(
                                    "minimal_resolution: basis bookkeeping");
                            v[it->second] = ((v[it->second] + cc) % p + p) % p;
                        }
                    }
                    columns.push_back(std::move(v));
                }
            }

            std::vector<std::vector<int>> matrix(target_dim,
                                                 std::vector<int>(basis.size(), 0));
            for (std::size_t i = 0; i < basis.size(); ++i)
                for (std::size_t r = 0; r < target_dim; ++r)
                    matrix[r][i] = columns[i][r];
            std::vector<std::vector<int>> kernel =
                detail::nullspace(matrix, basis.size(), p);
            stage.kernels[t] = kernel;

            if (s == s_max)
                continue; /* no need to cover the last kernel */

            /* span of A^+ applied to lower-degree kernels */
            detail::SpanTracker span{p, {}, {}};
            std::map<std::pair<std::size_t, Word>, std::size_t> self_index;
            for (std::size_t j = 0; j < basis.size(); ++j)
                self_index[basis[j]] = j;
            for (int letter : letters) {
                int delta = letter_degree(p, letter);
                if (delta > t)
                    continue;
                auto it = stage.kernels.find(t - delta);
                if (it == stage.kernels.end())
                    continue;
                const auto& from_basis = stage.basis_at(p, t - delta);
                for (const auto& kv : it->second)
                    span.add(detail::letter_times(p, letter, kv, from_basis,
                                                  basis, self_index));
            }
            for (const auto& kv : kernel) {
                if (!span.add(kv))
                    continue;
                detail::Stage& next = stages[std::size_t(s + 1)];
                next.gen_degrees.push_back(t);
                std::map<std::pair<std::size_t, Word>, int> image;
                for (std::size_t j = 0; j < basis.size(); ++j)
                    if (kv[j] % p != 0)
                        image[basis[j]] = kv[j] % p;
                next.images_in_stage.push_back(std::move(image));
            }
        }
    }

    return chart;
}

} // namespace detail

/* dim Ext^{s,t}(M, F_p) for s <= s_max and t - s <= n_max, by iterated
 * minimal free covers.  With verify_truncation set, the whole computation is
 * repeated one internal degree higher and must agree on the overlap. */
inline ExtChart minimal_resolution(const SteenrodModule& m, int s_max, int n_max,
                                   bool verify_truncation = false)
{
    if (s_max < 0 || n_max < 0)
        throw std::invalid_argument("minimal_resolution: negative range");
    if (n_max + s_max > m.T - 2)
        throw std::invalid_argument(
            "minimal_resolution: range exceeds module truncation");
    ExtChart chart = detail::resolve_chart(m, s_max, n_max);
    if (verify_truncation) {
        ExtChart wider = detail::resolve_chart(m, s_max, n_max + 1);
        for (int s = 0; s <= s_max; ++s)
            for (int stem = 0; stem <= n_max; ++stem)
                if (wider.dim(s, stem) != chart.dim(s, stem))
                    throw std::logic_error(
                        "minimal_resolution: truncation affected the range");
    }
    return chart;
}

/* the hypersurface charts' differential patterns */
inline std::vector<DifferentialAnnotation> standard_differential_pattern(int p)
{
    check_steenrod_prime(p, "standard_differential_pattern");
    using Kind = DifferentialAnnotation::Kind;
    if (p == 2)
        return {
            {2, 6, 1, 5, 3, Kind::always_iso},
            {4, 8, 0, 7, 4, Kind::iso_iff_d_mod_8_is_4},
        };
    return {
        {2, 8, 0, 7, 2, Kind::undecided},
    };
}

/* chart of the hypersurface Thom module with its differential pattern; the
 * recorded mod-3 pattern describes the d = 0 mod 3 chart only, so other
 * residues carry no annotations */
inline ExtChart thom_chart(long d, int p, int s_max = 5, int n_max = 8,
                           bool verify_truncation = false)
{
    SteenrodModule m = thom_module(d, p);
    ExtChart chart = minimal_resolution(m, s_max, n_max, verify_truncation);
    if (p == 2 || d % 3 == 0)
        chart.differentials = standard_differential_pattern(p);
    return chart;
}

struct EInfOutcome {
    std::string label; /* empty when no undecided differential is involved */
    std::vector<std::vector<int>> dims;
    std::vector<int> class_counts;        /* per stem */
    std::vector<long long> column_orders; /* p^count */
    std::vector<bool> has_tower;          /* top filtration still occupied */
};

struct EInfReport {
    int p = 2;
    long d = 0;
    int s_max = 0;
    int n_max = 0;
    std::vector<EInfOutcome> outcomes;
};

/* run the chart's differential pattern; an undecided differential yields one
 * outcome per alternative, deciding nothing */
inline EInfReport apply_differential_pattern(const ExtChart& chart, long d)
{
    using Kind = DifferentialAnnotation::Kind;
    for (const auto& ann : chart.differentials) {
        if (chart.dim(ann.source_s, ann.source_stem) < 1 ||
            chart.dim(ann.target_s, ann.target_stem) < 1)
            throw std::invalid_argument(
                "apply_differential_pattern: pattern references absent classes");
        if (ann.target_stem != ann.source_stem - 1 ||
            ann.target_s != ann.source_s + ann.r)
            throw std::invalid_argument(
                "apply_differential_pattern: malformed differential");
    }

    std::vector<const DifferentialAnnotation*> undecided;
    for (const auto& ann : chart.differentials)
        if (ann.kind == Kind::undecided)
            undecided.push_back(&ann);

    EInfReport report;
    report.p = chart.p;
    report.d = d;
    report.s_max = chart.s_max;
    report.n_max = chart.n_max;

    std::size_t variants = undecided.empty() ? 1 : 2;
    for (std::size_t variant = 0; variant < variants; ++variant) {
        EInfOutcome outcome;
        if (!undecided.empty())
            outcome.label = variant == 0 ? "undecided differential zero"
                                         : "undecided differential nonzero";
        outcome.dims = chart.dims;
        for (const auto& ann : chart.differentials) {
            bool fires = false;
            switch (ann.kind) {
            case Kind::always_iso:
                fires = true;
                break;
            case Kind::iso_iff_d_mod_8_is_4:
                fires = ((d % 8) + 8) % 8 == 4;
                break;
            case Kind::undecided:
                fires = variant == 1;
                break;
            }
            if (!fires)
                continue;
            outcome.dims[std::size_t(ann.source_s)][std::size_t(ann.source_stem)] -= 1;
            outcome.dims[std::size_t(ann.target_s)][std::size_t(ann.target_stem)] -= 1;
            if (outcome.dims[std::size_t(ann.source_s)][std::size_t(ann.source_stem)] < 0 ||
                outcome.dims[std::size_t(ann.target_s)][std::size_t(ann.target_stem)] < 0)
                throw std::invalid_argument(
                    "apply_differential_pattern: pattern references absent classes");
        }
        for (int stem = 0; stem <= chart.n_max; ++stem) {
            int count = 0;
            for (int s = 0; s <= chart.s_max; ++s)
                count += outcome.dims[std::size_t(s)][std::size_t(stem)];
            outcome.class_counts.push_back(count);
            long long order = 1;
            for (int i = 0; i < count; ++i)
                order *= chart.p;
            outcome.column_orders.push_back(order);
            outcome.has_tower.push_back(
                outcome.dims[std::size_t(chart.s_max)][std::size_t(stem)] > 0);
        }
        report.outcomes.push_back(std::move(outcome));
    }
    return report;
}

/* number of E_2 classes of the stem below the given filtration */
inline int filtration_quotient_rank(const ExtChart& chart, int stem,
                                    int min_filtration)
{
    if (stem < 0 || stem > chart.n_max)
        throw std::invalid_argument("filtration_quotient_rank: stem outside chart");
    int count = 0;
    for (int s = 0; s < min_filtration && s <= chart.s_max; ++s)
        count += chart.dim(s, stem);
    return count;
}

namespace detail {

inline std::string render_chart_text(const ExtChart& chart)
{
    std::ostringstream out;
    for (int s = chart.s_max; s >= 0; --s) {
        out << "s=" << s << " |";
        for (int stem = 0; stem <= chart.n_max; ++stem) {
            int v = chart.dim(s, stem);
            out << " " << (v == 0 ? std::string(".") : std::to_string(v));
        }
        out << "\n";
    }
    out << "----+";
    for (int stem = 0; stem <= chart.n_max; ++stem)
        out << "--";
    out << "\n stem";
    for (int stem = 0; stem <= chart.n_max; ++stem)
        out << " " << stem % 10;
    out << "\n";
    for (const auto& ann : chart.differentials) {
        out << "d" << ann.r << " (" << ann.source_stem << "," << ann.source_s
            << ") -> (" << ann.target_stem << "," << ann.target_s << ")";
        switch (ann.kind) {
        case DifferentialAnnotation::Kind::always_iso:
            out << " iso\n";
            break;
        case DifferentialAnnotation::Kind::iso_iff_d_mod_8_is_4:
            out << " iso iff d = 4 mod 8\n";
            break;
        case DifferentialAnnotation::Kind::undecided:
            out << " dashed (undecided)\n";
            break;
        }
    }
    return out.str();
}

inline std::string render_chart_svg(const ExtChart& chart)
{
    const int cell = 40, margin = 50, radius = 4;
    int width = margin * 2 + cell * chart.n_max;
    int height = margin * 2 + cell * chart.s_max;
    auto cx = [&](int stem) { return margin + cell * stem; };
    auto cy = [&](int s) { return height - margin - cell * s; };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << width
        << " " << height << "\">\n";
    out << "<g stroke=\"#999\" stroke-width=\"1\">\n";
    out << "<line x1=\"" << margin / 2 << "\" y1=\"" << cy(0) + cell / 2
        << "\" x2=\"" << width - margin / 2 << "\" y2=\"" << cy(0) + cell / 2
        << "\"/>\n";
    out << "<line x1=\"" << margin / 2 << "\" y1=\"" << cy(0) + cell / 2
        << "\" x2=\"" << margin / 2 << "\" y2=\"" << margin / 2 << "\"/>\n";
    out << "</g>\n";

    /* vertical lines join stacked classes within a stem */
    out << "<g stroke=\"#444\" stroke-width=\"1\">\n";
    for (int stem = 0; stem <= chart.n_max; ++stem)
        for (int s = 0; s < chart.s_max; ++s)
            if (chart.dim(s, stem) > 0 && chart.dim(s + 1, stem) > 0)
                out << "<line x1=\"" << cx(stem) << "\" y1=\"" << cy(s)
                    << "\" x2=\"" << cx(stem) << "\" y2=\"" << cy(s + 1)
                    << "\"/>\n";
    out << "</g>\n";

    for (const auto& ann : chart.differentials) {
        bool dashed = ann.kind != DifferentialAnnotation::Kind::always_iso;
        out << "<line x1=\"" << cx(ann.source_stem) << "\" y1=\""
            << cy(ann.source_s) << "\" x2=\"" << cx(ann.target_stem)
            << "\" y2=\"" << cy(ann.target_s) << "\" stroke=\"#c33\""
            << (dashed ? " stroke-dasharray=\"6 3\"" : "") << "/>\n";
    }

    for (int stem = 0; stem <= chart.n_max; ++stem)
        for (int s = 0; s <= chart.s_max; ++s) {
            int n = chart.dim(s, stem);
            for (int i = 0; i < n; ++i) {
                int offset = 14 * i - 7 * (n - 1);
                out << "<circle cx=\"" << cx(stem) + offset << "\" cy=\""
                    << cy(s) << "\" r=\"" << radius << "\" fill=\"#000\"/>\n";
            }
        }
    out << "</svg>\n";
    return out.str();
}

} // namespace detail

inline std::string emit_chart(const ExtChart& chart, const std::string& format)
{
    if (format == "text")
        return detail::render_chart_text(chart);
    if (format == "svg")
        return detail::render_chart_svg(chart);
    throw std::invalid_argument("emit_chart: format must be text or svg");
}

} // namespace hypermono
