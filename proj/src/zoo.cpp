#include "paracyc/zoo.hpp"

#include "paracyc/errors.hpp"

#include <cassert>
#include <numeric>

namespace paracyc {

namespace {

// Tuple indexing for tensor powers: big-endian, slot 0 most significant.
long tuple_index(const std::vector<int>& tup, int base) {
    long idx = 0;
    for (int v : tup) idx = idx * base + v;
    return idx;
}

long power(int base, int exp) {
    long p = 1;
    for (int i = 0; i < exp; ++i) p *= base;
    return p;
}

// Iterate all tuples of length len with entries < base.
template <typename F>
void for_tuples(int len, int base, F&& f) {
    std::vector<int> tup(len, 0);
    while (true) {
        f(tup);
        int k = len - 1;
        while (k >= 0 && ++tup[k] == base) tup[k--] = 0;
        if (k < 0) break;
    }
}

} // namespace

ValidationReport AlgebraPresentation::validate_presentation() const {
    ValidationReport rep(name + " presentation");
    auto mul = [&](const Vec& a, const Vec& b) {
        Vec out(dim, Rat(0));
        for (int i = 0; i < dim; ++i) {
            if (a[i] == 0) continue;
            for (int j = 0; j < dim; ++j) {
                if (b[j] == 0) continue;
                for (int k = 0; k < dim; ++k)
                    out[k] += a[i] * b[j] * product[i][j][k];
            }
        }
        return out;
    };
    auto basis_vec = [&](int i) {
        Vec v(dim, Rat(0));
        v[i] = 1;
        return v;
    };
    bool assoc = true;
    for (int i = 0; i < dim && assoc; ++i)
        for (int j = 0; j < dim && assoc; ++j)
            for (int k = 0; k < dim && assoc; ++k)
                assoc = mul(mul(basis_vec(i), basis_vec(j)), basis_vec(k)) ==
                        mul(basis_vec(i), mul(basis_vec(j), basis_vec(k)));
    rep.check_true("associativity on basis triples", assoc);

    bool unital = true;
    for (int i = 0; i < dim; ++i)
        unital = unital && mul(unit, basis_vec(i)) == basis_vec(i) &&
                 mul(basis_vec(i), unit) == basis_vec(i);
    rep.check_true("two-sided unit", unital);

    auto apply_sigma = [&](const Vec& a) {
        Vec out(dim, Rat(0));
        for (int j = 0; j < dim; ++j) {
            if (a[j] == 0) continue;
            for (int i = 0; i < dim; ++i) out[i] += sigma.get(i, j) * a[j];
        }
        return out;
    };
    bool hom = true;
    for (int i = 0; i < dim && hom; ++i)
        for (int j = 0; j < dim && hom; ++j)
            hom = apply_sigma(mul(basis_vec(i), basis_vec(j))) ==
                  mul(apply_sigma(basis_vec(i)), apply_sigma(basis_vec(j)));
    rep.check_true("sigma is an algebra map", hom);
    rep.check_true("sigma fixes the unit", apply_sigma(unit) == unit);
    rep.check_true("sigma invertible", rank(sigma) == dim);
    return rep;
}

ValidationReport GroupPresentation::validate_presentation() const {
    ValidationReport rep(name + " presentation");
    bool assoc = true, id_ok = true, inv_ok = true, central = true;
    for (int i = 0; i < order; ++i) {
        id_ok = id_ok && table[identity][i] == i && table[i][identity] == i;
        bool has_inv = false;
        for (int j = 0; j < order; ++j)
            if (table[i][j] == identity && table[j][i] == identity) has_inv = true;
        inv_ok = inv_ok && has_inv;
        central = central && table[phi][i] == table[i][phi];
        for (int j = 0; j < order && assoc; ++j)
            for (int k = 0; k < order && assoc; ++k)
                assoc = table[table[i][j]][k] == table[i][table[j][k]];
    }
    rep.check_true("associativity", assoc);
    rep.check_true("identity element", id_ok);
    rep.check_true("inverses", inv_ok);
    rep.check_true("phi central", central);
    return rep;
}

int GroupPresentation::inv(int g) const {
    for (int j = 0; j < order; ++j)
        if (table[g][j] == identity) return j;
    throw UnknownExample("no inverse");
}

CyclicStructure algebra_structure(const AlgebraPresentation& alg, int M) {
    const int n = alg.dim;
    CyclicStructure cs;
    cs.name = alg.name;
    cs.C.window = M;
    cs.C.ranks.resize(M + 1);
    for (int m = 0; m <= M; ++m) cs.C.ranks[m] = power(n, m + 1);

    cs.faces.resize(M + 1);
    cs.degens.emplace(M);
    cs.t.resize(M + 1);

    for (int m = 0; m <= M; ++m) {
        long dim_m = cs.C.ranks[m];
        long dim_lower = m >= 1 ? cs.C.ranks[m - 1] : 0;
        cs.faces[m].assign(m + 1, SparseMat(static_cast<int>(dim_lower),
                                            static_cast<int>(dim_m)));
        cs.t[m] = SparseMat(static_cast<int>(dim_m), static_cast<int>(dim_m));
        if (m <= M - 1)
            (*cs.degens)[m].assign(
                m + 1, SparseMat(static_cast<int>(cs.C.ranks[m + 1]),
                                 static_cast<int>(dim_m)));

        for_tuples(m + 1, n, [&](const std::vector<int>& tup) {
            long col = tuple_index(tup, n);
            // inner faces multiply adjacent slots
            for (int i = 0; i + 1 <= m; ++i) {
                const Vec& prod = alg.product[tup[i]][tup[i + 1]];
                std::vector<int> out(tup);
                out.erase(out.begin() + i);
                for (int k = 0; k < n; ++k) {
                    if (prod[k] == 0) continue;
                    out[i] = k;
                    cs.faces[m][i].add_to(
                        static_cast<int>(tuple_index(out, n)),
                        static_cast<int>(col), prod[k]);
                }
            }
            // end face: sigma(a_m) a_0 in slot 0
            if (m >= 1) {
                std::vector<int> out(tup.begin(), tup.end() - 1);
                for (int p = 0; p < n; ++p) {
                    Rat sp = alg.sigma.get(p, tup[m]);
                    if (sp == 0) continue;
                    const Vec& prod = alg.product[p][tup[0]];
                    for (int k = 0; k < n; ++k) {
                        if (prod[k] == 0) continue;
                        out[0] = k;
                        cs.faces[m][m].add_to(
                            static_cast<int>(tuple_index(out, n)),
                            static_cast<int>(col), sp * prod[k]);
                    }
                }
            }
            // t rotates the last slot to the front through sigma
            {
                std::vector<int> out(m + 1);
                for (int i = 1; i <= m; ++i) out[i] = tup[i - 1];
                for (int p = 0; p < n; ++p) {
                    Rat sp = alg.sigma.get(p, tup[m]);
                    if (sp == 0) continue;
                    out[0] = p;
                    cs.t[m].add_to(static_cast<int>(tuple_index(out, n)),
                                   static_cast<int>(col), sp);
                }
            }
            // degeneracies insert the unit after slot j
            if (m <= M - 1) {
                for (int j = 0; j <= m; ++j) {
                    std::vector<int> out(tup);
                    out.insert(out.begin() + j + 1, 0);
                    for (int k = 0; k < n; ++k) {
                        if (alg.unit[k] == 0) continue;
                        out[j + 1] = k;
                        (*cs.degens)[m][j].add_to(
                            static_cast<int>(tuple_index(out, n)),
                            static_cast<int>(col), alg.unit[k]);
                    }
                }
            }
        });
    }
    return cs;
}

CyclicStructure group_structure(const GroupPresentation& grp, int M) {
    const int g = grp.order;
    const int phi_inv = grp.inv(grp.phi);
    CyclicStructure cs;
    cs.name = grp.name;
    cs.C.window = M;
    cs.C.ranks.resize(M + 1);
    for (int m = 0; m <= M; ++m) cs.C.ranks[m] = power(g, m + 1);

    cs.faces.resize(M + 1);
    cs.degens.emplace(M);
    cs.t.resize(M + 1);

    for (int m = 0; m <= M; ++m) {
        long dim_m = cs.C.ranks[m];
        long dim_lower = m >= 1 ? cs.C.ranks[m - 1] : 0;
        cs.faces[m].assign(m + 1, SparseMat(static_cast<int>(dim_lower),
                                            static_cast<int>(dim_m)));
        cs.t[m] = SparseMat(static_cast<int>(dim_m), static_cast<int>(dim_m));
        if (m <= M - 1)
            (*cs.degens)[m].assign(
                m + 1, SparseMat(static_cast<int>(cs.C.ranks[m + 1]),
                                 static_cast<int>(dim_m)));

        for_tuples(m + 1, g, [&](const std::vector<int>& tup) {
            long col = tuple_index(tup, g);
            if (m >= 1) {
                for (int i = 0; i <= m; ++i) {
                    std::vector<int> out(tup);
                    out.erase(out.begin() + i);
                    cs.faces[m][i].set(static_cast<int>(tuple_index(out, g)),
                                       static_cast<int>(col), Rat(1));
                }
            }
            {
                std::vector<int> out(m + 1);
                out[0] = grp.table[phi_inv][tup[m]];
                for (int i = 1; i <= m; ++i) out[i] = tup[i - 1];
                cs.t[m].set(static_cast<int>(tuple_index(out, g)),
                            static_cast<int>(col), Rat(1));
            }
            if (m <= M - 1) {
                for (int j = 0; j <= m; ++j) {
                    std::vector<int> out(tup);
                    out.insert(out.begin() + j, tup[j]);
                    (*cs.degens)[m][j].set(static_cast<int>(tuple_index(out, g)),
                                           static_cast<int>(col), Rat(1));
                }
            }
        });
    }
    return cs;
}

namespace {

AlgebraPresentation make_algebra(const std::string& name, int dim,
                                 const Rat& x_squared, bool sign_twist) {
    AlgebraPresentation a;
    a.name = name;
    a.dim = dim;
    a.unit.assign(dim, Rat(0));
    a.unit[0] = 1;
    a.product.assign(dim, std::vector<Vec>(dim, Vec(dim, Rat(0))));
    a.product[0][0][0] = 1;
    if (dim == 2) {
        a.product[0][1][1] = 1;
        a.product[1][0][1] = 1;
        a.product[1][1][0] = x_squared;
    }
    a.sigma = SparseMat(dim, dim);
    a.sigma.set(0, 0, Rat(1));
    if (dim == 2) a.sigma.set(1, 1, sign_twist ? Rat(-1) : Rat(1));
    return a;
}

GroupPresentation make_cyclic_group(const std::string& name, int order, int phi) {
    GroupPresentation grp;
    grp.name = name;
    grp.order = order;
    grp.identity = 0;
    grp.phi = phi;
    grp.table.assign(order, std::vector<int>(order));
    for (int i = 0; i < order; ++i)
        for (int j = 0; j < order; ++j) grp.table[i][j] = (i + j) % order;
    return grp;
}

} // namespace

CyclicStructure zoo(const std::string& name, int M) {
    if (name == "trivial-Q")
        return algebra_structure(make_algebra(name, 1, Rat(0), false), M);
    if (name == "dual-numbers")
        return algebra_structure(make_algebra(name, 2, Rat(0), false), M);
    if (name == "sign-twisted")
        return algebra_structure(make_algebra(name, 2, Rat(1), true), M);
    if (name == "group-Z2-phi-g")
        return group_structure(make_cyclic_group(name, 2, 1), M);
    if (name == "group-Z3-phi-g")
        return group_structure(make_cyclic_group(name, 3, 1), M);
    if (name == "group-Z2-phi-e")
        return group_structure(make_cyclic_group(name, 2, 0), M);
    throw UnknownExample("unknown example '" + name + "'");
}

std::vector<std::string> zoo_names() {
    return {"trivial-Q",      "dual-numbers",   "sign-twisted",
            "group-Z2-phi-g", "group-Z3-phi-g", "group-Z2-phi-e"};
}

int cyclic_order_of_T(const GradedMap& T, int bound) {
    GradedMap acc = T;
    GradedMap one = GradedMap::identity(T.src()).restricted(T.lo(), T.hi());
    for (int r = 1; r <= bound; ++r) {
        if (equals(acc, one)) return r;
        acc = T * acc;
    }
    return 0;
}

std::vector<Rat> averaging_polynomial(int r) {
    return std::vector<Rat>(r, Rat(1) / Rat(r));
}

} // namespace paracyc
