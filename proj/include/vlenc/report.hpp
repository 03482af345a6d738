#ifndef VLENC_REPORT_HPP
#define VLENC_REPORT_HPP

// Text, JSON and CSV renderings. All reals go out at 12 significant digits
// and +inf as the string "inf", so identical inputs give identical bytes.

#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "vlenc/analysis.hpp"
#include "vlenc/codec.hpp"
#include "vlenc/exponents.hpp"
#include "vlenc/numeric.hpp"

namespace vlenc {

using Json = nlohmann::ordered_json;

inline Json json_real(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return round12(v);
}

inline Json json_real(const ExtReal& v) { return v.is_infinite() ? Json("inf") : json_real(v.value()); }

inline Json to_json(const BoundRecord& b)
{
    return Json{{"name", b.name}, {"lhs", json_real(b.lhs)}, {"rhs", json_real(b.rhs)}, {"holds", b.holds}};
}

inline Json to_json(const LeakageReport& r)
{
    Json j;
    j["mi_total_bits"] = json_real(r.mi_total);
    j["mi_length_bits"] = json_real(r.mi_length);
    j["mi_cond_bits"] = json_real(r.mi_cond);
    j["avg_len_bits"] = json_real(r.avg_len);
    j["p_raw"] = json_real(r.p_raw);
    j["deficit_bits"] = json_real(r.key.deficit);
    j["h_tilde_bits"] = json_real(r.key.h_tilde);
    j["prop3_rhs_bits"] = json_real(r.key.prop3_rhs);
    j["delta"] = json_real(r.delta);
    Json bounds = Json::array();
    for (const auto& b : r.bounds)
        bounds.push_back(to_json(b));
    j["bounds"] = std::move(bounds);
    return j;
}

inline std::string params_text(const SchemeParams& sp)
{
    std::ostringstream os;
    os << "q = " << sp.q << '\n'
       << "n = " << sp.n << '\n'
       << "rate = " << format_real(sp.R) << '\n'
       << "mode = " << to_string(sp.mode) << '\n'
       << "gamma_n = " << format_real(sp.gamma_n) << '\n'
       << "R_n = " << format_real(sp.R_n) << '\n'
       << "m = " << sp.m << '\n'
       << "L1 = " << sp.L1 << '\n'
       << "L2 = " << sp.L2 << '\n'
       << "code_size = " << sp.code_size.str() << '\n'
       << "single_branch = " << (sp.single_branch ? "true" : "false") << '\n';
    return os.str();
}

/// Codebook summary: parameters, then one line per admitted type.
inline std::string code_summary(const UniversalCode& code)
{
    std::ostringstream os;
    os << params_text(code.params());
    os << "admitted_types = " << code.admitted_types().size() << '\n';
    os << "# type\tentropy\tclass_size\toffset\n";
    for (std::size_t i = 0; i < code.admitted_types().size(); ++i) {
        const auto& t = code.admitted_types()[i];
        os << format_type(t) << '\t' << format_real(t.entropy()) << '\t' << class_size(t).str() << '\t'
           << code.offsets()[i].str() << '\n';
    }
    return os.str();
}

inline const char* exponents_csv_header() { return "R,E,F,H_X,H_K,R_star,R_star2"; }

inline std::string exponents_csv_row(double R, const Distribution& p_X, const Distribution& p_K)
{
    const RateThresholds t = rate_thresholds(p_X, p_K);
    std::ostringstream os;
    os << format_real(R) << ',' << format_real(exponent_E(R, p_X).value) << ','
       << format_real(exponent_F(R, p_K).value) << ',' << format_real(t.H_X) << ','
       << format_real(t.H_K) << ',' << format_real(t.R_star) << ',' << format_real(t.R_star2);
    return os.str();
}

inline const char* sweep_csv_header()
{
    return "n,R,mi_total_bits,mi_length_bits,mi_cond_bits,avg_len_bits,p_raw,deficit_bits";
}

inline std::string sweep_csv_row(unsigned n, double R, const LeakageReport& r)
{
    std::ostringstream os;
    os << n << ',' << format_real(R) << ',' << format_real(r.mi_total) << ','
       << format_real(r.mi_length) << ',' << format_real(r.mi_cond) << ',' << format_real(r.avg_len)
       << ',' << format_real(r.p_raw) << ',' << format_real(r.key.deficit);
    return os.str();
}

/// Inclusive grid lo, lo+step, ..., up to hi (within 1e-9 of hi).
inline std::vector<double> real_grid(double lo, double hi, double step)
{
    require(step > 0.0 && hi >= lo, errc::invalid_argument, "grid needs step > 0 and hi >= lo");
    std::vector<double> g;
    for (long i = 0;; ++i) {
        const double v = lo + static_cast<double>(i) * step;
        if (v > hi + 1e-9)
            break;
        g.push_back(std::min(v, hi));
    }
    return g;
}

} // namespace vlenc

#endif // VLENC_REPORT_HPP
