#include "singkam/series_text.hpp"

#include <cstdio>
#include <sstream>

namespace singkam {

std::string formatDouble(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void writeSeriesText(std::ostream& os, const TruncatedSeries& f) {
    const int n = f.dim();
    for (const auto& t : f.terms()) {
        os << formatDouble(t.c.real()) << ' ' << formatDouble(t.c.imag()) << " :";
        for (int b = 0; b < 4; ++b) {
            if (b) os << " |";
            for (int i = 0; i < n; ++i) os << ' ' << t.mi.exp(static_cast<Var>(b), i);
        }
        os << '\n';
    }
}

std::string writeSeriesText(const TruncatedSeries& f) {
    std::ostringstream os;
    writeSeriesText(os, f);
    return os.str();
}

TruncatedSeries readSeriesText(const std::string& text, const SeriesParams& params) {
    std::istringstream in(text);
    std::string line;
    std::vector<TruncatedSeries::Term> terms;
    int lineNo = 0;
    while (std::getline(in, line)) {
        ++lineNo;
        std::istringstream ls(line);
        double re, im;
        if (!(ls >> re)) {
            // blank line
            std::string rest;
            if (ls.clear(), std::getline(ls, rest) && rest.find_first_not_of(" \t") != std::string::npos)
                throw ValidationError("readSeriesText: malformed line " + std::to_string(lineNo));
            continue;
        }
        std::string sep;
        if (!(ls >> im >> sep) || sep != ":")
            throw ValidationError("readSeriesText: malformed line " + std::to_string(lineNo));
        MultiIndex mi(params.n);
        for (int b = 0; b < 4; ++b) {
            if (b) {
                if (!(ls >> sep) || sep != "|")
                    throw ValidationError("readSeriesText: expected '|' on line " +
                                          std::to_string(lineNo));
            }
            for (int i = 0; i < params.n; ++i) {
                int e;
                if (!(ls >> e) || e < 0)
                    throw ValidationError("readSeriesText: bad exponent on line " +
                                          std::to_string(lineNo));
                mi.setExp(static_cast<Var>(b), i, e);
            }
        }
        if (mi.weightedDegree() > params.degCap || mi.tDegree() > params.tCap)
            throw ValidationError("readSeriesText: monomial exceeds caps on line " +
                                  std::to_string(lineNo));
        terms.push_back({mi, Complex(re, im)});
    }
    return TruncatedSeries::fromTerms(params, std::move(terms));
}

} // namespace singkam
