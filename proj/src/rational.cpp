#include "wps/rational.hpp"

#include <sstream>

namespace wps {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            Int num(s.substr(0, slash));
            Int den(s.substr(slash + 1));
            if (den == 0) throw parse_error("zero denominator in '" + s + "'");
            return Rat(num, den);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
            bool neg = !head.empty() && head[0] == '-';
            if (neg) head = head.substr(1);
            if (head.empty()) head = "0";
            Int ip(head);
            Int fp = tail.empty() ? Int(0) : Int(tail);
            Int den(1);
            for (size_t i = 0; i < tail.size(); ++i) den *= 10;
            Rat r = Rat(ip) + Rat(fp, den);
            return neg ? Rat(-r) : r;
        }
        return Rat(Int(s));
    } catch (const std::exception& e) {
        throw parse_error("bad rational literal '" + s + "'");
    }
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

std::string rat_complex_str(const RatComplex& z) {
    if (z.im == 0) return rat_str(z.re);
    return rat_str(z.re) + (z.im < 0 ? "-" : "+") + rat_str(rat_abs(z.im)) + "i";
}

}  // namespace wps
