#include "cr/cherednik.hpp"

#include "cherednik_internal.hpp"
#include "cr/errors.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <tuple>
#include <unordered_map>

namespace cr {

/// Hash-consed expression DAG for normal-form coefficients. Children always
/// have smaller ids than their parents.
class NodePool {
public:
    enum class Kind : std::uint8_t { Const, Root, Compose, Mul, Add, Scale, Deriv };
    struct Node {
        Kind kind;
        int a = -1;
        int b = -1;
        int k = 0;      // root id, Weyl index or derivative variable
        double c = 0.0; // constant or scale factor
    };

    explicit NodePool(int rank) : W_(WeylGroup::get(rank)) {
        constant(0.0);
        constant(1.0);
    }

    const Node& operator[](int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& root(int k) const { return roots_[static_cast<std::size_t>(k)]; }

    bool is_const(int id) const { return (*this)[id].kind == Kind::Const; }
    bool is_zero(int id) const { return is_const(id) && (*this)[id].c == 0.0; }

    int constant(double c) { return intern({Kind::Const, -1, -1, 0, c}); }

    int root_coef(const std::vector<double>& alpha) {
        auto it = std::find(roots_.begin(), roots_.end(), alpha);
        int k = static_cast<int>(it - roots_.begin());
        if (it == roots_.end())
            roots_.push_back(alpha);
        return intern({Kind::Root, -1, -1, k, 0.0});
    }

    int compose(int x, std::size_t w) {
        if (is_const(x) || w == 0)
            return x;
        const Node& n = (*this)[x];
        if (n.kind == Kind::Compose) // y(s1 (s2 t)) = y((s1 s2) t)
            return compose(n.a, W_.product(static_cast<std::size_t>(n.k), w));
        return intern({Kind::Compose, x, -1, static_cast<int>(w), 0.0});
    }

    int scale(int x, double c) {
        if (c == 0.0 || is_zero(x))
            return 0;
        if (c == 1.0)
            return x;
        const Node& n = (*this)[x];
        if (n.kind == Kind::Const)
            return constant(n.c * c);
        if (n.kind == Kind::Scale)
            return scale(n.a, n.c * c);
        return intern({Kind::Scale, x, -1, 0, c});
    }

    int mul(int x, int y) {
        if (is_const(x))
            return scale(y, (*this)[x].c);
        if (is_const(y))
            return scale(x, (*this)[y].c);
        if (x > y)
            std::swap(x, y);
        return intern({Kind::Mul, x, y, 0, 0.0});
    }

    int add(int x, int y) {
        if (is_zero(x))
            return y;
        if (is_zero(y))
            return x;
        if (is_const(x) && is_const(y))
            return constant((*this)[x].c + (*this)[y].c);
        if (x > y)
            std::swap(x, y);
        return intern({Kind::Add, x, y, 0, 0.0});
    }

    int deriv(int x, int var) {
        const Node n = (*this)[x];
        switch (n.kind) {
        case Kind::Const:
            return 0;
        case Kind::Scale:
            return scale(deriv(n.a, var), n.c);
        case Kind::Add:
            return add(deriv(n.a, var), deriv(n.b, var));
        default:
            return intern({Kind::Deriv, x, -1, var, 0.0});
        }
    }

private:
    int intern(const Node& n) {
        const auto key = std::make_tuple(static_cast<int>(n.kind), n.a, n.b, n.k, std::bit_cast<std::uint64_t>(n.c));
        auto [it, inserted] = index_.try_emplace(key, static_cast<int>(nodes_.size()));
        if (inserted)
            nodes_.push_back(n);
        return it->second;
    }

    const WeylGroup& W_;
    std::vector<Node> nodes_;
    std::vector<std::vector<double>> roots_;
    std::map<std::tuple<int, int, int, int, std::uint64_t>, int> index_;
};

namespace {

using TermKey = std::pair<std::size_t, std::vector<int>>;
using TermMap = std::map<TermKey, int>;

void accumulate(NodePool& pool, TermMap& m, std::size_t w, std::vector<int> alpha, int node) {
    if (pool.is_zero(node))
        return;
    auto [it, inserted] = m.try_emplace({w, std::move(alpha)}, node);
    if (!inserted)
        it->second = pool.add(it->second, node);
}

TermMap apply_factor(NodePool& pool, const TermMap& in, const RootData& rd, int j, double shift,
                     std::size_t max_terms) {
    const WeylGroup& W = WeylGroup::get(rd.rank);
    const auto ct = detail::cherednik_terms(rd, j);
    std::vector<int> root_nodes;
    for (const auto& rt : ct.refl)
        root_nodes.push_back(pool.root_coef(rt.alpha));

    TermMap out;
    for (const auto& [key, c] : in) {
        const auto& [w, beta] = key;
        const GroupElement& g = W[w];
        // d_j [c(t) (d^beta f)(w t)]
        accumulate(pool, out, w, beta, pool.deriv(c, j));
        std::vector<int> b2 = beta;
        ++b2[static_cast<std::size_t>(g.perm()[static_cast<std::size_t>(j)])];
        accumulate(pool, out, w, std::move(b2), pool.scale(c, g.signs()[static_cast<std::size_t>(j)]));
        accumulate(pool, out, w, beta, pool.scale(c, shift - ct.rho));
        for (std::size_t m = 0; m < ct.refl.size(); ++m) {
            const auto& rt = ct.refl[m];
            const int R = root_nodes[m];
            accumulate(pool, out, w, beta, pool.scale(pool.mul(R, c), rt.kappa));
            accumulate(pool, out, W.product(w, rt.s), beta,
                       pool.scale(pool.mul(R, pool.compose(c, rt.s)), -rt.kappa));
        }
        if (out.size() > max_terms)
            throw NumericalError("normal form exceeds the term bound of " + std::to_string(max_terms));
    }
    return out;
}

} // namespace

void OperatorNF::materialize() const {
    if (terms_)
        return;
    const int r = rd_.rank;
    auto pool = std::make_shared<NodePool>(r);
    TermMap total;
    for (const auto& term : program_.terms) {
        TermMap cur;
        cur.emplace(TermKey{0, std::vector<int>(static_cast<std::size_t>(r), 0)}, 1);
        for (auto it = term.chain.rbegin(); it != term.chain.rend(); ++it)
            cur = apply_factor(*pool, cur, rd_, it->j, it->shift, max_terms_);
        for (const auto& [key, c] : cur)
            accumulate(*pool, total, key.first, key.second, pool->scale(c, term.coef));
        if (total.size() > max_terms_)
            throw NumericalError("normal form exceeds the term bound of " + std::to_string(max_terms_));
    }
    auto terms = std::make_shared<std::vector<Term>>();
    for (const auto& [key, c] : total)
        terms->push_back({key.first, key.second, c});
    pool_ = std::move(pool);
    terms_ = std::move(terms);
}

const std::vector<OperatorNF::Term>& OperatorNF::terms() const {
    materialize();
    return *terms_;
}

double OperatorNF::apply_nf(const JetFunction& f, std::span<const double> t) const {
    const auto& T = terms();
    const NodePool& pool = *pool_;
    const int r = rd_.rank;
    const WeylGroup& W = WeylGroup::get(r);
    const std::size_t nW = W.size();
    const std::size_t nN = pool.size();
    using Kind = NodePool::Kind;

    // Orders and orbit points each node is needed at, propagated parent -> child.
    std::vector<int> req(nN, -1);
    std::vector<std::vector<char>> need(nN);
    auto mark = [&](int id, std::size_t w, int order) {
        auto& v = need[static_cast<std::size_t>(id)];
        if (v.empty())
            v.assign(nW, 0);
        v[w] = 1;
        req[static_cast<std::size_t>(id)] = std::max(req[static_cast<std::size_t>(id)], order);
    };
    int fmax = 0;
    for (const auto& term : T) {
        mark(term.coeff, 0, 0);
        int deg = 0;
        for (int a : term.alpha)
            deg += a;
        fmax = std::max(fmax, deg);
    }
    for (std::size_t id = nN; id-- > 0;) {
        if (need[id].empty())
            continue;
        const auto& n = pool[static_cast<int>(id)];
        const int K = req[id];
        for (std::size_t w = 0; w < nW; ++w) {
            if (!need[id][w])
                continue;
            switch (n.kind) {
            case Kind::Const:
            case Kind::Root:
                break;
            case Kind::Compose:
                mark(n.a, W.product(static_cast<std::size_t>(n.k), w), K);
                break;
            case Kind::Mul:
            case Kind::Add:
                mark(n.a, w, K);
                mark(n.b, w, K);
                break;
            case Kind::Scale:
                mark(n.a, w, K);
                break;
            case Kind::Deriv:
                mark(n.a, w, K + 1);
                break;
            }
        }
    }

    std::vector<std::vector<double>> pts(nW);
    for (std::size_t w = 0; w < nW; ++w)
        pts[w] = W[w].act(t);

    std::unordered_map<std::size_t, Jet> val;
    auto get = [&](int id, std::size_t w) -> const Jet& { return val.at(static_cast<std::size_t>(id) * nW + w); };
    for (std::size_t id = 0; id < nN; ++id) {
        if (need[id].empty())
            continue;
        const auto& n = pool[static_cast<int>(id)];
        const int K = req[id];
        for (std::size_t w = 0; w < nW; ++w) {
            if (!need[id][w])
                continue;
            Jet J;
            switch (n.kind) {
            case Kind::Const:
                J = Jet::constant(r, K, n.c);
                break;
            case Kind::Root: {
                const auto& alpha = pool.root(n.k);
                double aq = 0.0;
                for (int i = 0; i < r; ++i)
                    aq += alpha[static_cast<std::size_t>(i)] * pts[w][static_cast<std::size_t>(i)];
                if (aq == 0.0)
                    throw DomainError("normal-form coefficient evaluated on a singular wall");
                J = reciprocal(1.0 - exp(Jet::affine(r, K, alpha, aq) * -2.0));
                break;
            }
            case Kind::Compose:
                J = get(n.a, W.product(static_cast<std::size_t>(n.k), w))
                        .truncated(K)
                        .compose_weyl(W[static_cast<std::size_t>(n.k)]);
                break;
            case Kind::Mul:
                J = get(n.a, w).truncated(K) * get(n.b, w).truncated(K);
                break;
            case Kind::Add:
                J = get(n.a, w).truncated(K) + get(n.b, w);
                break;
            case Kind::Scale:
                J = get(n.a, w).truncated(K) * n.c;
                break;
            case Kind::Deriv:
                J = get(n.a, w).truncated(K + 1).derivative(n.k);
                break;
            }
            val.emplace(id * nW + w, std::move(J));
        }
    }

    std::vector<Jet> fj(nW);
    double s = 0.0;
    for (const auto& term : T) {
        if (fj[term.w].size() == 0)
            fj[term.w] = f.jet(pts[term.w], fmax);
        s += get(term.coeff, 0).value() * fj[term.w].partial(term.alpha);
    }
    return s;
}

} // namespace cr
