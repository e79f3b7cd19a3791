#include "hyp/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

namespace hyp {

namespace {
constexpr double kPi = 3.141592653589793238462643383279;
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

// --- octagon geometry -------------------------------------------------------

namespace octagon {

double translation_length() { return 2.0 * std::acosh(1.0 + kSqrt2); }
double inradius() { return std::acosh(1.0 + kSqrt2); }
double vertex_distance() { return std::acosh(3.0 + 2.0 * kSqrt2); }
double side_pq() { return std::acosh(std::cos(kPi / 3.0) / std::sin(kPi / 8.0)); }
double side_pr() {
    return std::acosh(1.0 / (std::tan(kPi / 8.0) * std::tan(kPi / 3.0)));
}
double side_qr() { return std::acosh(std::cos(kPi / 8.0) / std::sin(kPi / 3.0)); }

DiskPoint corner_q() { return from_polar({side_pq(), 0.0}); }
DiskPoint corner_r() { return from_polar({side_pr(), kPi / 8.0}); }

}  // namespace octagon

MobiusElement lattice_generator(int j) {
    if (j < 0 || j > 7) throw std::invalid_argument("lattice_generator: index 0..7");
    // g_0 has alpha = 1 + sqrt2, beta = sqrt(2 + 2 sqrt2); conjugation by
    // r_{j pi/4} multiplies beta by the phase.
    const double alpha = 1.0 + kSqrt2;
    const double beta = std::sqrt(2.0 + 2.0 * kSqrt2);
    MobiusElement g;
    g.alpha = {alpha, 0.0};
    g.beta = std::polar(beta, j * kPi / 4.0);
    return g;
}

double riemann_hurwitz(int l, int m, int n, int g) {
    if (l <= 0 || m <= 0 || n <= 0) throw std::invalid_argument("riemann_hurwitz: bad (l,m,n)");
    const double angle_sum = 1.0 / l + 1.0 / m + 1.0 / n;
    if (angle_sum >= 1.0)
        throw std::invalid_argument("riemann_hurwitz: triangle is not hyperbolic");
    if (g < 2) throw std::invalid_argument("riemann_hurwitz: genus must be >= 2");
    return (2.0 * g - 2.0) / (1.0 - angle_sum);
}

ReduceResult reduce_to_octagon(const DiskPoint& z0) {
    if (z0.abs2() >= (1.0 - 1e-12) * (1.0 - 1e-12))
        throw std::invalid_argument("reduce_to_octagon: point too close to the boundary");

    static const std::array<MobiusElement, 8> gens = [] {
        std::array<MobiusElement, 8> g;
        for (int j = 0; j < 8; ++j) g[j] = lattice_generator(j);
        return g;
    }();

    const DiskPoint origin(0.0, 0.0);
    DiskPoint z = z0;
    std::vector<int> word;
    for (int iter = 0; iter < 10000; ++iter) {
        const double d = dist(z, origin);
        int best = -1;
        double best_d = d - 1e-13;
        for (int j = 0; j < 8; ++j) {
            const double dj = dist(apply(gens[j], z), origin);
            if (dj < best_d - 1e-15) {
                best = j;
                best_d = dj;
            }
        }
        if (best < 0) {
            // Verify the Dirichlet condition before returning.
            for (int j = 0; j < 8; ++j) {
                if (dist(apply(gens[j], z), origin) < dist(z, origin) - 1e-9)
                    throw std::runtime_error("reduce_to_octagon: numeric drift");
            }
            return {z, word};
        }
        z = apply(gens[best], z);
        word.push_back((best + 4) % 8);  // inverse of the applied generator
    }
    throw std::runtime_error("reduce_to_octagon: no convergence after 10^4 steps");
}

MobiusElement word_to_element(const std::vector<int>& word) {
    MobiusElement g = MobiusElement::identity();
    for (int j : word) g = compose(g, lattice_generator(j));
    return g;
}

// --- Mat2Z3 -----------------------------------------------------------------

Mat2Z3 Mat2Z3::times(const Mat2Z3& o) const {
    Mat2Z3 r;
    r.m[0] = static_cast<uint8_t>((m[0] * o.m[0] + m[1] * o.m[2]) % 3);
    r.m[1] = static_cast<uint8_t>((m[0] * o.m[1] + m[1] * o.m[3]) % 3);
    r.m[2] = static_cast<uint8_t>((m[2] * o.m[0] + m[3] * o.m[2]) % 3);
    r.m[3] = static_cast<uint8_t>((m[2] * o.m[1] + m[3] * o.m[3]) % 3);
    return r;
}

uint8_t Mat2Z3::det() const {
    return static_cast<uint8_t>((m[0] * m[3] + 2 * m[1] * m[2]) % 3);  // ad - bc mod 3
}

Mat2Z3 Mat2Z3::inverse_mat() const {
    const uint8_t d = det();
    if (d == 0) throw std::runtime_error("Mat2Z3: singular");
    const uint8_t dinv = d;  // 1^-1 = 1, 2^-1 = 2 mod 3
    Mat2Z3 r;
    r.m[0] = static_cast<uint8_t>((dinv * m[3]) % 3);
    r.m[1] = static_cast<uint8_t>((dinv * (3 - m[1]) % 3) % 3);
    r.m[2] = static_cast<uint8_t>((dinv * (3 - m[2]) % 3) % 3);
    r.m[3] = static_cast<uint8_t>((dinv * m[0]) % 3);
    return r;
}

Mat2Z3 Mat2Z3::transpose_inverse() const {
    Mat2Z3 t = inverse_mat();
    std::swap(t.m[1], t.m[2]);
    return t;
}

// --- TilingGroup ------------------------------------------------------------

namespace {

struct MatFace {
    Mat2Z3 m;
    bool reflect = false;

    int key() const { return m.key() + (reflect ? 81 : 0); }
    MatFace times(const MatFace& o) const {
        MatFace r;
        r.m = m.times(reflect ? o.m.transpose_inverse() : o.m);
        r.reflect = reflect != o.reflect;
        return r;
    }
};

Mat2Z3 make_mat(int a, int b, int c, int d) {
    Mat2Z3 m;
    m.m = {static_cast<uint8_t>(a), static_cast<uint8_t>(b), static_cast<uint8_t>(c),
           static_cast<uint8_t>(d)};
    return m;
}

}  // namespace

const TilingGroup& TilingGroup::instance() {
    static const TilingGroup group;
    return group;
}

TilingGroup::TilingGroup() {
    build_elements();
    build_classes();
    build_table();
    build_isotropy();
    audit();
}

void TilingGroup::build_elements() {
    // Generator faces: matrices from the GL(2,3) identification, isometries
    // from the tiling triangle (sigma is the half-turn about Q; epsilon is
    // forced by rho sigma eps = Id and is the 2pi/3 rotation about R).
    const Mat2Z3 mat_rho = make_mat(0, 2, 2, 2);
    const Mat2Z3 mat_sigma = make_mat(2, 0, 0, 1);
    const Mat2Z3 mat_eps = make_mat(2, 1, 2, 0);

    const MobiusElement iso_rho = MobiusElement::rotation(kPi / 4.0);
    const double q = octagon::side_pq();
    const MobiusElement iso_sigma = hyp::compose(
        hyp::compose(MobiusElement::boost(q), MobiusElement::rotation(kPi)),
        MobiusElement::boost(-q));
    const MobiusElement iso_eps = hyp::inverse(hyp::compose(iso_rho, iso_sigma));
    const MobiusElement iso_kappa = MobiusElement::conjugation();

    struct Gen {
        MatFace face;
        MobiusElement iso;
        char name;
    };
    const std::array<Gen, 4> gens{Gen{{mat_rho, false}, iso_rho, 'r'},
                                  Gen{{mat_sigma, false}, iso_sigma, 's'},
                                  Gen{{mat_eps, false}, iso_eps, 'e'},
                                  Gen{{Mat2Z3::identity(), true}, iso_kappa, 'k'}};

    std::map<int, int> index_by_key;
    std::vector<MatFace> faces;

    SymmetryElement id;
    id.word = "1";
    elems_.push_back(id);
    faces.push_back(MatFace{});
    index_by_key[faces[0].key()] = 0;
    gen_mult_.emplace_back();

    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        for (int gi = 0; gi < 4; ++gi) {
            const MatFace nf = faces[cur].times(gens[gi].face);
            const int key = nf.key();
            auto it = index_by_key.find(key);
            int idx;
            if (it == index_by_key.end()) {
                idx = static_cast<int>(elems_.size());
                SymmetryElement e;
                e.matrix = nf.m;
                e.reflect = nf.reflect;
                e.iso = hyp::compose(elems_[cur].iso, gens[gi].iso);
                e.word = (elems_[cur].word == "1") ? std::string(1, gens[gi].name)
                                                   : elems_[cur].word + gens[gi].name;
                elems_.push_back(e);
                faces.push_back(nf);
                index_by_key[key] = idx;
                gen_mult_.emplace_back();
                queue.push_back(idx);
            } else {
                idx = it->second;
            }
            gen_mult_[cur][gi] = idx;
        }
    }
    if (static_cast<int>(elems_.size()) != kOrder)
        throw std::runtime_error("TilingGroup: generated " + std::to_string(elems_.size()) +
                                 " elements, expected 96");

    rho_ = gen_mult_[0][0];
    sigma_ = gen_mult_[0][1];
    eps_ = gen_mult_[0][2];
    kappa_ = gen_mult_[0][3];

    // Full multiplication table via the matrix faces.
    mult_.assign(kOrder, std::vector<int>(kOrder, -1));
    for (int i = 0; i < kOrder; ++i) {
        for (int j = 0; j < kOrder; ++j) {
            const int key = faces[i].times(faces[j]).key();
            mult_[i][j] = index_by_key.at(key);
        }
    }
    inv_.assign(kOrder, -1);
    for (int i = 0; i < kOrder; ++i) {
        for (int j = 0; j < kOrder; ++j) {
            if (mult_[i][j] == 0) {
                inv_[i] = j;
                break;
            }
        }
    }
    minus_id_ = element_power(rho_, 4);

    // Re-anchor the isometry representatives so every element maps the base
    // triangle into the Dirichlet octagon (used by the surface mesh).
    const Complex centroid_c =
        (octagon::corner_q().c() + octagon::corner_r().c()) / 3.0;
    const DiskPoint centroid(centroid_c);
    for (auto& e : elems_) {
        const DiskPoint image = apply(e.iso, centroid);
        const ReduceResult red = reduce_to_octagon(image);
        if (!red.word.empty()) {
            e.iso = hyp::compose(hyp::inverse(word_to_element(red.word)), e.iso);
        }
    }
}

int TilingGroup::element_power(int g, int n) const {
    int r = 0;
    for (int i = 0; i < n; ++i) r = mult_[r][g];
    return r;
}

int TilingGroup::conjugate(int g, int h) const {
    return mult_[mult_[h][g]][inv_[h]];
}

void TilingGroup::build_classes() {
    std::vector<int> class_of(kOrder, -1);
    std::vector<std::vector<int>> raw_classes;
    for (int g = 0; g < kOrder; ++g) {
        if (class_of[g] >= 0) continue;
        const int ci = static_cast<int>(raw_classes.size());
        std::vector<int> members;
        for (int h = 0; h < kOrder; ++h) {
            const int c = conjugate(g, h);
            if (class_of[c] < 0) {
                class_of[c] = ci;
                members.push_back(c);
            }
        }
        std::sort(members.begin(), members.end());
        raw_classes.push_back(std::move(members));
    }
    if (static_cast<int>(raw_classes.size()) != kNumClasses)
        throw std::runtime_error("TilingGroup: expected 13 conjugacy classes, got " +
                                 std::to_string(raw_classes.size()));

    // Representatives in the published column order; classes are keyed by
    // these representative words, not by any enumeration order.
    const int rho2 = mult_[rho_][rho_];
    const int meps = mult_[minus_id_][eps_];
    const int kappa_p = mult_[rho_][kappa_];
    const int sigmah = mult_[mult_[eps_][sigma_]][inv_[eps_]];
    const int sigmah_kappa = mult_[sigmah][kappa_];
    const int rho_sigmah_kappa = mult_[rho_][sigmah_kappa];
    const int eps_kappa = mult_[eps_][kappa_];
    const int meps_kappa = mult_[minus_id_][eps_kappa];

    const std::vector<std::pair<std::string, int>> reps{
        {"Id", 0},           {"rho", rho_},
        {"rho^2", rho2},     {"-Id", minus_id_},
        {"sigma", sigma_},   {"eps", eps_},
        {"-eps", meps},      {"kappa", kappa_},
        {"kappa'", kappa_p}, {"sigmah.kappa", sigmah_kappa},
        {"rho.sigmah.kappa", rho_sigmah_kappa},
        {"eps.kappa", eps_kappa},
        {"-eps.kappa", meps_kappa}};

    classes_.clear();
    std::vector<int> raw_to_ordered(kNumClasses, -1);
    for (int k = 0; k < kNumClasses; ++k) {
        const int raw = class_of[reps[k].second];
        if (raw_to_ordered[raw] >= 0)
            throw std::runtime_error("TilingGroup: representatives " + reps[k].first +
                                     " and " + classes_[raw_to_ordered[raw]].label +
                                     " are conjugate");
        raw_to_ordered[raw] = k;
        ConjugacyClass c;
        c.label = reps[k].first;
        c.representative = reps[k].second;
        c.members = raw_classes[raw];
        classes_.push_back(std::move(c));
    }
    for (int g = 0; g < kOrder; ++g) elems_[g].conj_class = raw_to_ordered[class_of[g]];
}

void TilingGroup::build_table() {
    // Table 1, rows chi_1..chi_13 over the class order used above; the only
    // irrational entries are +-sqrt(3) in the last two rows.
    static constexpr int kT[13][13] = {
        {1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
        {1, -1, 1, 1, -1, 1, 1, 1, -1, -1, 1, 1, 1},
        {1, -1, 1, 1, -1, 1, 1, -1, 1, 1, -1, -1, -1},
        {1, 1, 1, 1, 1, 1, 1, -1, -1, -1, -1, -1, -1},
        {2, 0, 2, 2, 0, -1, -1, -2, 0, 0, -2, 1, 1},
        {2, 0, 2, 2, 0, -1, -1, 2, 0, 0, 2, -1, -1},
        {3, 1, -1, 3, -1, 0, 0, -1, -1, 1, 3, 0, 0},
        {3, 1, -1, 3, -1, 0, 0, 1, 1, -1, -3, 0, 0},
        {3, -1, -1, 3, 1, 0, 0, 1, -1, 1, -3, 0, 0},
        {3, -1, -1, 3, 1, 0, 0, -1, 1, -1, 3, 0, 0},
        {4, 0, 0, -4, 0, -2, 2, 0, 0, 0, 0, 0, 0},
        {4, 0, 0, -4, 0, 1, -1, 0, 0, 0, 0, 0, 0},
        {4, 0, 0, -4, 0, 1, -1, 0, 0, 0, 0, 0, 0}};

    table_.assign(13, {});
    for (int i = 0; i < 13; ++i)
        for (int c = 0; c < 13; ++c) table_[i][c] = CharValue{kT[i][c], 0};
    table_[11][11] = CharValue{0, 1};   // chi_12(eps.kappa)  = +sqrt3
    table_[11][12] = CharValue{0, -1};  // chi_12(-eps.kappa) = -sqrt3
    table_[12][11] = CharValue{0, -1};
    table_[12][12] = CharValue{0, 1};
}

std::vector<int> TilingGroup::subgroup_closure(std::vector<int> generators) const {
    std::vector<char> seen(kOrder, 0);
    std::deque<int> queue;
    seen[0] = 1;
    queue.push_back(0);
    std::vector<int> out{0};
    for (int g : generators) {
        if (!seen[g]) {
            seen[g] = 1;
            out.push_back(g);
            queue.push_back(g);
        }
    }
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        for (int g : generators) {
            const int n = mult_[cur][g];
            if (!seen[n]) {
                seen[n] = 1;
                out.push_back(n);
                queue.push_back(n);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

void TilingGroup::build_isotropy() {
    const int rho2 = mult_[rho_][rho_];
    const int sigma_t = mult_[mult_[rho2][sigma_]][inv_[rho2]];  // rho^2 sigma rho^-2
    const int kappa_p = mult_[rho_][kappa_];
    const int meps = mult_[minus_id_][eps_];

    const std::vector<std::pair<std::string, std::vector<int>>> defs{
        {"C2k", {sigma_, kappa_}},
        {"C2k'", {sigma_t, kappa_}},
        {"C3k'", {eps_, kappa_p}},
        {"D3", {sigma_t, eps_}},
        {"D8", {rho_, kappa_}},
        {"C6k'", {meps, kappa_p}},
        {"D2k", {minus_id_, sigma_, kappa_}}};

    isotropy_.clear();
    for (const auto& [name, gens] : defs)
        isotropy_.push_back({name, subgroup_closure(gens)});

    // D2k' and D8k are the isotropy subgroups of the quadratic planforms
    // built from the chi_8 triplet (Psi_1 Psi_3 and Psi_3^2).  They are
    // computed here as stabilizers in an explicit chi_8 representation:
    // Psi_3 is the D8-fixed direction and Psi_1 its image under
    // rho sigma rho^{-1} (the element moving the octagon center to the
    // side-one midpoint).
    const IrrepMatrices rep8 = IrrepMatrices::build(*this, 7);
    Eigen::Matrix3d fix = Eigen::Matrix3d::Zero();
    for (int g : isotropy("D8").elements) fix += rep8.matrix(g);
    fix /= static_cast<double>(isotropy("D8").elements.size());
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(fix, Eigen::ComputeFullU);
    if (svd.singularValues()(0) < 0.9 || svd.singularValues()(1) > 1e-8)
        throw std::runtime_error("TilingGroup: D8-fixed space in chi_8 is not a line");
    const Eigen::Vector3d v3 = svd.matrixU().col(0);
    const int w1 = mult_[mult_[rho_][sigma_]][inv_[rho_]];
    const Eigen::Vector3d v1 = rep8.matrix(w1) * v3;

    std::vector<int> stab_square, stab_product;
    const Eigen::Matrix3d prod0 = v1 * v3.transpose() + v3 * v1.transpose();
    for (int g = 0; g < kOrder; ++g) {
        const Eigen::Vector3d gv3 = rep8.matrix(g) * v3;
        if ((gv3 - v3).norm() < 1e-8 || (gv3 + v3).norm() < 1e-8) stab_square.push_back(g);
        const Eigen::Vector3d gv1 = rep8.matrix(g) * v1;
        const Eigen::Matrix3d prod = gv1 * gv3.transpose() + gv3 * gv1.transpose();
        if ((prod - prod0).norm() < 1e-8) stab_product.push_back(g);
    }
    if (stab_square.size() != 32 || stab_product.size() != 16)
        throw std::runtime_error("TilingGroup: unexpected planform stabilizer orders");
    isotropy_.push_back({"D2k'", stab_product});
    isotropy_.push_back({"D8k", stab_square});
}

const IsotropySubgroup& TilingGroup::isotropy(const std::string& name) const {
    for (const auto& h : isotropy_)
        if (h.name == name) return h;
    throw std::invalid_argument("TilingGroup: unknown isotropy subgroup " + name);
}

int TilingGroup::fix_dim(int chi, const std::vector<int>& subgroup) const {
    if (chi < 0 || chi >= 13) throw std::invalid_argument("fix_dim: chi index 0..12");
    if (subgroup.empty()) throw std::invalid_argument("fix_dim: empty subgroup");
    long a = 0, b = 0;
    for (int g : subgroup) {
        const CharValue v = table_[chi][class_of(g)];
        a += v.a;
        b += v.b;
    }
    const long h = static_cast<long>(subgroup.size());
    if (b != 0 || a % h != 0 || a < 0)
        throw std::runtime_error("fix_dim: not a subgroup or bad character data");
    return static_cast<int>(a / h);
}

std::vector<std::pair<int, double>> TilingGroup::character_projection_weights(int chi) const {
    const double d = kIrrepDims[chi];
    std::vector<std::pair<int, double>> w;
    w.reserve(kOrder);
    for (int g = 0; g < kOrder; ++g)
        w.emplace_back(g, d * table_[chi][class_of(g)].value() / kOrder);
    return w;
}

void TilingGroup::audit() const {
    // Group sanity: relations of the presentation.
    if (element_power(rho_, 8) != 0 || element_power(sigma_, 2) != 0 ||
        element_power(eps_, 3) != 0 || element_power(kappa_, 2) != 0 ||
        mult_[mult_[rho_][sigma_]][eps_] != 0)
        throw std::runtime_error("TilingGroup: generator relations violated");

    // Orientation split: 48 reflecting, 48 direct.
    int direct = 0;
    for (const auto& e : elems_) direct += e.reflect ? 0 : 1;
    if (direct != 48) throw std::runtime_error("TilingGroup: orientation split is not 48/48");

    // Homomorphism audit of the two faces: for every pair the isometry of
    // the product must agree with the composed isometries modulo Gamma.
    const DiskPoint origin(0.0, 0.0);
    for (int i = 0; i < kOrder; ++i) {
        for (int j = 0; j < kOrder; ++j) {
            const int k = mult_[i][j];
            const MobiusElement prod = hyp::compose(elems_[i].iso, elems_[j].iso);
            const MobiusElement gamma = hyp::compose(prod, hyp::inverse(elems_[k].iso));
            if (gamma.reflect)
                throw std::runtime_error("TilingGroup: reflection parity mismatch");
            const ReduceResult red = reduce_to_octagon(apply(gamma, origin));
            if (dist(red.point, origin) > 1e-7)
                throw std::runtime_error("TilingGroup: face mismatch (orbit of 0)");
            if (!word_to_element(red.word).approx_equal(gamma, 1e-7))
                throw std::runtime_error("TilingGroup: face mismatch (not a lattice element)");
        }
    }
}

std::string TilingGroup::to_json() const {
    nlohmann::json j;
    j["order"] = kOrder;
    nlohmann::json elements = nlohmann::json::array();
    for (int g = 0; g < kOrder; ++g) {
        const auto& e = elems_[g];
        elements.push_back({{"index", g},
                            {"word", e.word},
                            {"matrix", {e.matrix.m[0], e.matrix.m[1], e.matrix.m[2], e.matrix.m[3]}},
                            {"reflect", e.reflect},
                            {"class", classes_[e.conj_class].label},
                            {"iso_alpha", {e.iso.alpha.real(), e.iso.alpha.imag()}},
                            {"iso_beta", {e.iso.beta.real(), e.iso.beta.imag()}}});
    }
    j["elements"] = elements;

    nlohmann::json classes = nlohmann::json::array();
    for (const auto& c : classes_)
        classes.push_back({{"label", c.label},
                           {"size", c.members.size()},
                           {"representative", c.representative},
                           {"members", c.members}});
    j["classes"] = classes;

    nlohmann::json table = nlohmann::json::array();
    for (int i = 0; i < 13; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int c = 0; c < 13; ++c)
            row.push_back({{"a", table_[i][c].a}, {"b_sqrt3", table_[i][c].b}});
        table.push_back(row);
    }
    j["character_table"] = table;
    return j.dump(2);
}

// --- IrrepMatrices ----------------------------------------------------------

IrrepMatrices IrrepMatrices::build(const TilingGroup& group, int chi, unsigned seed) {
    const int n = TilingGroup::kOrder;
    const int dim = TilingGroup::kIrrepDims[chi];

    // Left-regular permutation: (P_g x)[g h] = x[h].
    auto permute = [&](int g, const Eigen::MatrixXd& x) {
        Eigen::MatrixXd y(n, x.cols());
        for (int h = 0; h < n; ++h) y.row(group.compose(g, h)) = x.row(h);
        return y;
    };

    for (unsigned attempt = 0; attempt < 8; ++attempt) {
        std::mt19937 rng(seed + attempt);
        std::normal_distribution<double> gauss(0.0, 1.0);
        Eigen::MatrixXd a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j <= i; ++j) a(i, j) = a(j, i) = gauss(rng);

        // Symmetrized operator commuting with the left action; its
        // eigenspaces are invariant and generically single irrep copies.
        Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
        for (int g = 0; g < n; ++g) {
            const int gi = group.inverse(g);
            for (int i = 0; i < n; ++i) {
                const int pi = group.compose(gi, i);
                for (int j = 0; j < n; ++j) c(i, j) += a(pi, group.compose(gi, j));
            }
        }

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c);
        const Eigen::VectorXd evals = es.eigenvalues();
        const Eigen::MatrixXd evecs = es.eigenvectors();
        const double tol = 1e-7 * (std::abs(evals(0)) + std::abs(evals(n - 1)) + 1.0);

        int start = 0;
        while (start < n) {
            int end = start + 1;
            while (end < n && evals(end) - evals(end - 1) < tol) ++end;
            const int d = end - start;
            if (d == dim) {
                const Eigen::MatrixXd basis = evecs.middleCols(start, d);
                // Character match against all 13 class representatives.
                bool match = true;
                for (int cls = 0; cls < TilingGroup::kNumClasses && match; ++cls) {
                    const int rep = group.classes()[cls].representative;
                    const double tr = (basis.transpose() * permute(rep, basis)).trace();
                    if (std::abs(tr - group.character(chi, cls).value()) > 1e-5) match = false;
                }
                if (match) {
                    IrrepMatrices out;
                    out.chi_ = chi;
                    out.dim_ = dim;
                    out.mats_.resize(n);
                    for (int g = 0; g < n; ++g)
                        out.mats_[g] = basis.transpose() * permute(g, basis);
                    // Homomorphism and orthogonality spot checks.
                    std::mt19937 check_rng(12345);
                    for (int t = 0; t < 200; ++t) {
                        const int g = static_cast<int>(check_rng() % n);
                        const int h = static_cast<int>(check_rng() % n);
                        const Eigen::MatrixXd diff =
                            out.mats_[g] * out.mats_[h] - out.mats_[group.compose(g, h)];
                        if (diff.norm() > 1e-8)
                            throw std::runtime_error("IrrepMatrices: homomorphism check failed");
                    }
                    for (int g = 0; g < n; ++g) {
                        const Eigen::MatrixXd r =
                            out.mats_[g] * out.mats_[g].transpose() -
                            Eigen::MatrixXd::Identity(dim, dim);
                        if (r.norm() > 1e-8)
                            throw std::runtime_error("IrrepMatrices: matrices not orthogonal");
                    }
                    return out;
                }
            }
            start = end;
        }
    }
    throw std::runtime_error("IrrepMatrices: no irreducible copy found for chi_" +
                             std::to_string(chi + 1));
}

}  // namespace hyp
