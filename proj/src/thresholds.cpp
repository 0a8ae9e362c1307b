#include "pplab/thresholds.hpp"

#include <boost/integer/common_factor.hpp>

#include "pplab/errors.hpp"

namespace pplab {

namespace bmp = boost::multiprecision;

Rational rat(long long num, long long den) { return Rational(num) / Rational(den); }

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(bmp::cpp_int(s));
        return Rational(bmp::cpp_int(s.substr(0, slash))) / Rational(bmp::cpp_int(s.substr(slash + 1)));
    } catch (const std::exception&) {
        throw DomainError("cannot parse rational '" + s + "'");
    }
}

std::string str(const Rational& q) {
    auto n = bmp::numerator(q), d = bmp::denominator(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Affine operator+(const Affine& a, const Affine& b) { return {a.slope + b.slope, a.offset + b.offset}; }
Affine operator-(const Affine& a, const Affine& b) { return {a.slope - b.slope, a.offset - b.offset}; }
Affine operator*(const Rational& k, const Affine& a) { return {k * a.slope, k * a.offset}; }

LinearConstraint LinearConstraint::from_exponents(const Affine& lhs, const Affine& rhs, std::string anchor,
                                                  std::string description, ConstraintRole role) {
    Affine d = lhs - rhs;
    Rational a = d.slope, b = -d.offset;
    // clear denominators, then strip the common factor
    bmp::cpp_int l = boost::integer::lcm(bmp::denominator(a), bmp::denominator(b));
    Rational as = a * Rational(l), bs = b * Rational(l);
    bmp::cpp_int ai = bmp::numerator(as), bi = bmp::numerator(bs);
    bmp::cpp_int g = boost::integer::gcd(bmp::cpp_int(bmp::abs(ai)), bmp::cpp_int(bmp::abs(bi)));
    if (g > 1) ai /= g, bi /= g;
    LinearConstraint c;
    c.a = Rational(ai);
    c.b = Rational(bi);
    c.anchor = std::move(anchor);
    c.description = std::move(description);
    c.role = role;
    return c;
}

std::string LinearConstraint::text() const {
    if (a < 0) return str(-a) + "c > " + str(-b);
    return (a == 1 ? std::string() : str(a)) + "c < " + str(b);
}

Rational solve_threshold(const std::vector<LinearConstraint>& cs) {
    const LinearConstraint* up = nullptr;
    const LinearConstraint* down = nullptr;
    Rational upper, lower;
    for (const auto& c : cs) {
        if (c.a == 0) {
            if (!(0 < c.b)) throw InfeasibleError("constant constraint is false: " + c.description);
            continue;
        }
        Rational q = c.b / c.a;
        if (c.a > 0) {
            if (!up || q < upper) upper = q, up = &c;
        } else {
            if (!down || q > lower) lower = q, down = &c;
        }
    }
    if (!up) throw DomainError("no constraint bounds c from above");
    if (down && !(lower < upper))
        throw InfeasibleError("empty range: [" + down->text() + "] (" + down->description + ") against [" + up->text() +
                              "] (" + up->description + ")");
    return upper;
}

namespace {

using R = Rational;
const Affine C = Affine::c();
Affine K(R v) { return Affine::k(std::move(v)); }

LinearConstraint lt(const Affine& l, const Affine& r, std::string anchor, std::string d,
                    ConstraintRole role = ConstraintRole::side) {
    return LinearConstraint::from_exponents(l, r, std::move(anchor), std::move(d), role);
}

LinearConstraint above_one() {
    return lt(K(1), C, "c > 1 throughout", "lower end of the c range", ConstraintRole::lower);
}

std::vector<LinearConstraint> quartic_moment_set() {
    // the U bound for the fourth moment, target exponent 2 - c
    const Affine target = K(2) - C;
    const std::string a = "thm1/3 minor arc, B process then fifth-derivative test";
    return {
        above_one(),
        lt(rat(1, 20) * (9 * C + K(1)), target, a, "X F^{-1/2} N1^{19/20} = X^{(9c+1)/20} << X^{2-c}",
           ConstraintRole::binding),
        lt(K(rat(1, 4)) + rat(3, 10) * C, target, a, "X^{1/4} F^{3/10} << X^{2-c}"),
        lt(rat(24, 50) * C, target, a, "X^eta F^{24/50} << X^{2-c}"),
    };
}

std::vector<LinearConstraint> thm2_set() {
    const Affine target = K(rat(9, 10));
    const std::string u = "thm2 type II sums via the nine-term U bound";
    const Affine F = C;  // F << X^c at eta = 0
    const Affine half = K(rat(1, 2));  // N << X^{1/2}
    return {
        above_one(),
        lt(rat(1, 8) * F + K(rat(3, 4)), target, u, "U9 = F^{1/8} X^{3/4} << X^{9/10}", ConstraintRole::binding),
        lt(rat(10, 14) * K(1) + rat(1, 14) * C + rat(4, 14) * K(rat(35, 100)), target,
           "thm2 type I sums, M << X^{0.35}", "X^{10/14} F^{1/14} M^{4/14} << X^{9/10}", ConstraintRole::binding),
        lt(rat(1, 20) * F + rat(9, 40) * half + K(rat(29, 40)), target, u, "U1 = F^{1/20} N^{9/40} X^{29/40}"),
        lt(rat(3, 46) * F + rat(11, 46) * half + K(rat(32, 46)), target, u, "U2 = F^{3/46} N^{11/46} X^{32/46}"),
        lt(rat(1, 10) * F + rat(3, 10) * half + K(rat(3, 5)), target, u, "U3 = F^{1/10} N^{3/10} X^{3/5}"),
        lt(rat(1, 11) * F + rat(1, 33) * half + K(rat(17, 22)), target, u, "U5 = F^{1/11} N^{1/33} X^{17/22}"),
        lt(rat(1, 5) * F + rat(1, 10) * half + K(rat(3, 5)), target, u, "U7 = F^{1/5} N^{1/10} X^{3/5}"),
    };
}

std::vector<LinearConstraint> thm4_set() {
    const std::string a = "thm4 A(x) bound via the 13/84 exponent pair";
    return {
        above_one(),
        lt(rat(13, 84) * C + K(rat(1, 2)), K(5) - 2 * C, a, "(X^c)^{13/84} X^{1/2} << X^{5-2c}, i.e. 13c+42 < 420-168c",
           ConstraintRole::binding),
        lt(rat(17, 42) * C, K(1), a, "(xX^c)^{17/42} << X^{1-eta} so the exponent pair applies"),
        lt(K(rat(7, 25)) + K(rat(1, 2)), K(5) - 2 * C, "thm4 A(x), short case",
           "(xX^c)^{1/6} X^{1/2} << X^{0.78} << X^{5-2c}"),
        lt(K(2) - C + 2 * K(rat(79, 80) + rat(968, 1000)) + K(2), K(10) - 2 * C, "thm4 fourth-power combination",
           "X^{2-c+2(79/80+0.968)+2} << X^{10-2c}"),
        lt(K(1) + rat(1, 14) * C - rat(2, 7) * K(rat(39, 40)), K(rat(79, 80)), "thm4 type I, N >= X^{39/40}",
           "X^{1+c/14} N^{-2/7} << X^{79/80}"),
        lt(K(1) + rat(1, 14) * C - rat(2, 7) * K(rat(7, 10)), K(rat(968, 1000)), "thm4 majorant type I, N >> X^{7/10}",
           "X^{1+c/14} (X^{7/10})^{-2/7} << X^{0.968}"),
    };
}

std::vector<LinearConstraint> thm5_set() {
    const Affine H = 2 * C - K(2);     // H = X^{2c-2}
    const Affine Q = 7 * C - K(8);     // Q = H X^{5c-6}
    const Affine N1 = H + C - K(1);    // H X^{c-1}
    const Affine F1 = Q + K(1);        // q X at q = Q
    const std::string a = "thm5 B then A process, exponent-pair estimate at q = Q, H1 = H";
    return {
        above_one(),
        lt(rat(-1, 2) * N1 + rat(141, 950) * F1 + Q, K(0), a, "N1^{-1/2} (QX)^{141/950} Q << 1",
           ConstraintRole::binding),
        lt(rat(449, 690) * N1 + rat(63, 690) * (H + 5 * C - K(5)) - rat(26, 345) * H - N1 + Q, K(0), a,
           "N1^{449/690} (H X^{5c-5})^{63/690} H^{-26/345} N1^{-1} Q << 1"),
        lt(rat(2, 7) * C + K(rat(2, 7)), K(3) - 2 * C, "thm5 h = 0 term", "(xX^c)^{2/7} X^{2/7} << X^{3-2c}, i.e. 16c < 19"),
        lt(2 * C - K(2) - rat(5, 7) * (K(rat(3, 2)) - C) + rat(1, 7) * (2 * C + K(2)), K(3) - 2 * C,
           "thm5 large h tail", "X^a << X^{3-2c} with a = 2c-2-(5/7)(3/2-c)+(2c+2)/7"),
        lt(C, K(rat(7, 6)), "thm5 N1 <= F1^{1/2}", "c < 7/6"),
        lt(rat(13, 42) * (7 * C - K(7)) + 4 * C - K(5), K(0), "thm5 short N1 case",
           "(X^{7c-7})^{13/42} X^{4c-5} << 1"),
    };
}

std::vector<LinearConstraint> thm6_set() {
    const std::string a = "thm6 h-sum at H1 = H = X^{2c-4}";
    return {
        above_one(),
        lt(rat(11, 690) * (2 * C - K(4)) + K(rat(449, 690)) + rat(63, 690) * C, K(5) - 2 * C, a,
           "11/690(2c-4) + 449/690 + 63c/690 < 5-2c", ConstraintRole::binding),
        lt(K(rat(1, 2)) + rat(141, 950) * (3 * C - K(4)), K(5) - 2 * C, a, "1/2 + (3c-4) 141/950 < 5-2c"),
        lt(14 * (2 * C - K(4)) + (K(3) - C) + C + K(10), 14 * (K(3) - C) + K(70) - 28 * C,
           "thm6 h >= X^{3-c}/2", "H^14 H1 X^c X^10 < H1^14 X^{70-28c}, i.e. 70c < 155"),
        lt(K(2) - C + K(rat(79, 40)) + K(rat(19419, 10000)) + K(2), K(10) - 2 * C, "thm6 fourth-power combination",
           "X^{2-c+79/40+1.9419+2} << X^{10-2c}"),
    };
}

}  // namespace

std::vector<LinearConstraint> builtin_constraints(int theorem) {
    switch (theorem) {
        case 1:
        case 3: return quartic_moment_set();
        case 2: return thm2_set();
        case 4: return thm4_set();
        case 5: return thm5_set();
        case 6: return thm6_set();
    }
    throw DomainError("theorem must be 1..6, got " + std::to_string(theorem));
}

Rational claimed_threshold(int theorem) {
    switch (theorem) {
        case 1:
        case 3: return rat(39, 29);
        case 2: return rat(6, 5);
        case 4: return rat(378, 181);
        case 5: return rat(3581, 3106);
        case 6: return rat(609, 293);
    }
    throw DomainError("theorem must be 1..6, got " + std::to_string(theorem));
}

std::vector<Rational> excluded_points(int theorem) {
    if (theorem == 1) return {rat(4, 3)};
    return {};
}

ThresholdReport threshold_report(int theorem) {
    ThresholdReport r;
    r.theorem = theorem;
    auto cs = builtin_constraints(theorem);
    r.derived = solve_threshold(cs);
    r.claimed = claimed_threshold(theorem);
    r.match = r.derived == r.claimed;
    r.excluded = excluded_points(theorem);
    r.sides_slack = true;
    for (auto& c : cs) {
        ConstraintStatus st{c, c.bound(), 0, false};
        if (c.a > 0) {
            st.slack = st.bound - r.derived;
            st.attains = st.slack == 0;
            if (st.attains) r.binding.push_back(c.text() + " (" + c.description + ")");
            if (c.role == ConstraintRole::binding && !st.attains) r.sides_slack = false;
            if (c.role == ConstraintRole::side && !(st.slack > 0)) r.sides_slack = false;
        } else if (c.a < 0) {
            st.slack = r.derived - st.bound;
            if (!(st.slack > 0)) r.sides_slack = false;
        }
        r.rows.push_back(std::move(st));
    }
    return r;
}

std::vector<bool> verify_chain(const std::vector<ChainClaim>& claims) {
    std::vector<bool> out;
    for (const auto& c : claims) {
        bool v = false;
        switch (c.op) {
            case Cmp::lt: v = c.lhs < c.rhs; break;
            case Cmp::le: v = c.lhs <= c.rhs; break;
            case Cmp::eq: v = c.lhs == c.rhs; break;
            case Cmp::ge: v = c.lhs >= c.rhs; break;
            case Cmp::gt: v = c.lhs > c.rhs; break;
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace pplab
