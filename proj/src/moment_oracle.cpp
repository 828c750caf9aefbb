#include "unruhent/moment_oracle.hpp"

#include <cmath>
#include <vector>

namespace unruh {

namespace {

enum Sym { A, B, DA, DB };
struct Op {
    Sym sym;
    bool dag;
};
struct Term {
    cplx coef;
    Op op;
};
using Lin = std::vector<Term>;

Lin dagger(const Lin& x) {
    Lin r;
    for (auto t : x) r.push_back({std::conj(t.coef), {t.op.sym, !t.op.dag}});
    return r;
}

struct Table {
    cplx alpha, beta, beta_p;
    double n;
    cplx operator()(Op l, Op r) const {
        if (!l.dag && r.dag) {  // annihilator on the left, creator on the right
            if (l.sym == r.sym) return l.sym == DB ? 1 + n : 1.0;
            if (l.sym == DA && r.sym == A) return alpha;
            if (l.sym == A && r.sym == DA) return std::conj(alpha);
            if (l.sym == DB && r.sym == B) return beta;
            if (l.sym == B && r.sym == DB) return std::conj(beta);
            return 0;
        }
        if (!l.dag && !r.dag) {
            if (l.sym == B && r.sym == DB) return beta_p;
            return 0;
        }
        if (l.dag && r.dag) {
            if (l.sym == DB && r.sym == B) return std::conj(beta_p);
            return 0;
        }
        // creator on the left: only the noisy detector mode survives
        if (l.sym == DB && r.sym == DB) return n;
        return 0;
    }
};

cplx expect(const Table& t, const Lin& x, const Lin& y) {
    cplx s = 0;
    for (auto& u : x)
        for (auto& v : y) s += u.coef * v.coef * t(u.op, v.op);
    return s;
}

Lin add(Lin x, const Lin& y, cplx f = 1) {
    for (auto t : y) x.push_back({f * t.coef, t.op});
    return x;
}

}  // namespace

CovarianceMatrix4 second_moment_oracle(const OverlapSet& o, double n_mean, double s) {
    const double ch = std::cosh(s), sh = std::sinh(s);
    const cplx al = o.alpha, be = o.beta, bp = o.beta_prime;
    Lin dA = {{al * ch, {A, false}}, {-al * sh, {B, true}}, {1.0, {DA, false}}, {-al, {A, false}}};
    Lin dB = {{be * ch, {B, false}}, {-be * sh, {A, true}}, {1.0, {DB, false}}, {-be, {B, false}},
              {-bp, {B, true}},      {bp * ch, {B, true}},   {-bp * sh, {A, false}}};
    const double r2 = std::sqrt(2.0);
    const cplx mi(0, -1);
    Lin X[4] = {add(dA, dagger(dA)), add(dA, dagger(dA), -1.0), add(dB, dagger(dB)), add(dB, dagger(dB), -1.0)};
    for (auto& t : X[0]) t.coef /= r2;
    for (auto& t : X[1]) t.coef *= mi / r2;
    for (auto& t : X[2]) t.coef /= r2;
    for (auto& t : X[3]) t.coef *= mi / r2;

    Table tab{al, be, bp, n_mean};
    CovarianceMatrix4 S{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) S[i][j] = (expect(tab, X[i], X[j]) + expect(tab, X[j], X[i])).real();
    return S;
}

}  // namespace unruh
