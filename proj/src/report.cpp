#include "ekrf/report.hpp"

#include <algorithm>
#include <sstream>

#include "ekrf/conditions.hpp"
#include "ekrf/constructions.hpp"
#include "ekrf/search.hpp"

namespace ekrf {

std::vector<GridPoint> parse_grid(std::string_view text) {
    std::vector<GridPoint> grid;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<int> v;
        std::istringstream fields(line);
        std::string f;
        while (std::getline(fields, f, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stoi(f, &used));
                if (f.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(f);
            } catch (const std::exception&) {
                throw ParseError("malformed grid field '" + f + "'", line_no);
            }
        }
        if (v.size() != 4 && v.size() != 5) throw ParseError("grid rows are n,k,t,ell[,s]", line_no);
        GridPoint p{v[0], v[1], v[2], v[3], std::nullopt};
        if (v.size() == 5) p.s = v[4];
        grid.push_back(p);
    }
    return grid;
}

std::vector<ReportRow> report(const std::vector<GridPoint>& grid, const ReportOptions& opts) {
    std::vector<ReportRow> rows;
    for (const GridPoint& p : grid) {
        ReportRow row;
        row.point = p;
        try {
            Family fam;
            ConditionSpec spec;
            if (p.s) {
                if (p.t != 1) throw ParameterError("rows with s require t = 1");
                row.bound = rhs_bound(BoundKind::T8, {p.n, p.k, 1, p.ell, p.s});
                fam = construct_thm8(p.n, p.k, p.ell, *p.s);
                spec = ConditionSpec{1, p.ell, Variant::Eq10, *p.s};
            } else {
                row.bound = rhs_bound(BoundKind::T6, {p.n, p.k, p.t, p.ell, std::nullopt});
                fam = construct_thm6(p.n, p.k, p.t, p.ell);
                spec = ConditionSpec{p.t, p.ell, Variant::Eq4, 0};
            }
            row.construction = fam.size();
            row.marker = "-";
            if (opts.solve) {
                SearchOptions so;
                so.time_limit = opts.time_limit;
                so.node_cap = opts.node_cap;
                so.incumbent = fam;
                so.symmetry = Symmetry::ElementOrder;
                const SearchResult r = max_family(fam.params(), spec, so);
                row.solver_best = r.size;
                row.optimal = r.optimal;
                const BigInt best = r.size;
                if (best > *row.bound)
                    row.marker = ">";
                else if (!r.optimal)
                    row.marker = "?";
                else
                    row.marker = best == *row.bound ? "=" : "<";
            }
        } catch (const std::exception& e) {
            row.marker = "!";
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

std::vector<std::string> cells(const ReportRow& r) {
    auto opt = [](const auto& v) -> std::string {
        if (!v) return "";
        std::ostringstream s;
        s << *v;
        return s.str();
    };
    return {std::to_string(r.point.n),
            std::to_string(r.point.k),
            std::to_string(r.point.t),
            std::to_string(r.point.ell),
            r.point.s ? std::to_string(*r.point.s) : "",
            r.bound ? r.bound->str() : "",
            opt(r.construction),
            opt(r.solver_best),
            r.optimal ? (*r.optimal ? "yes" : "no") : "",
            r.marker,
            r.error};
}

const std::vector<std::string> kColumns = {"n",           "k",       "t",      "ell",   "s",    "bound",
                                           "construction", "solver_best", "optimal", "marker", "error"};

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows) {
    std::string out;
    for (std::size_t i = 0; i < kColumns.size(); ++i) out += (i ? "," : "") + kColumns[i];
    out += "\n";
    for (const auto& r : rows) {
        const auto c = cells(r);
        for (std::size_t i = 0; i < c.size(); ++i) out += (i ? "," : "") + csv_escape(c[i]);
        out += "\n";
    }
    return out;
}

std::string report_text(const std::vector<ReportRow>& rows) {
    std::vector<std::vector<std::string>> table{kColumns};
    for (const auto& r : rows) table.push_back(cells(r));
    std::vector<std::size_t> width(kColumns.size(), 0);
    for (const auto& row : table)
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    std::string out;
    for (const auto& row : table) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) line += "  ";
            line += row[i] + std::string(width[i] - row[i].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line + "\n";
    }
    return out;
}

}  // namespace ekrf
