#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "doctest.h"

#include "aha/errors.hpp"
#include "aha/rng.hpp"
#include "aha/stm/aha_stm.hpp"
#include "aha/vc/image.hpp"
#include "oracles.hpp"
#include "synthetic_omniglot.hpp"

using namespace aha;
using nn::Matrix;
using nn::Vector;

namespace {

Vector random_bipolar(Engine& rng, int n) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform01(rng) < 0.5 ? -1.0 : 1.0;
    return v;
}

// One rendition each of `count` distinct glyphs, preprocessed and flattened.
Matrix glyph_images(int count, std::uint64_t seed) {
    Engine rng(seed);
    Matrix out(52 * 52, count);
    for (int i = 0; i < count; ++i) {
        const auto glyph = synth::random_glyph(rng);
        out.col(i) = vc::flatten(vc::preprocess(synth::render(glyph, rng)));
    }
    return out;
}

int nearest(const Matrix& candidates, const Vector& x) {
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < candidates.cols(); ++c) {
        const double d = oracle::scalar_mse(candidates.col(c), x);
        if (d < best_d) {
            best_d = d;
            best = static_cast<int>(c);
        }
    }
    return best;
}

// (1/gain) * sum of the tanh integral term, stable at |s| = 1.
double graded_penalty(const Vector& s, double gain) {
    auto xlogx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
    double total = 0.0;
    for (Eigen::Index i = 0; i < s.size(); ++i) total += 0.5 * (xlogx(1.0 + s(i)) + xlogx(1.0 - s(i)));
    return total / gain;
}

stm::StmConfig small_stm() {
    stm::StmConfig cfg;
    cfg.pr_hidden = 300;
    return cfg;
}

}  // namespace

TEST_CASE("ps_init knocks out a fixed fraction of each unit's inputs") {
    const auto layer = stm::ps_init(200, 5);
    CHECK(layer.weights.rows() == 225);
    CHECK(layer.weights.minCoeff() >= 0.0);
    CHECK(layer.weights.maxCoeff() < 1.0);
    for (Eigen::Index u = 0; u < layer.weights.rows(); ++u)
        CHECK((layer.weights.row(u).array() == 0.0).count() == 50);
    CHECK(stm::ps_init(200, 5).weights == layer.weights);
    CHECK(stm::ps_init(200, 6).weights != layer.weights);
    CHECK_THROWS_AS(stm::ps_init(0, 1), InvalidArgument);
    stm::PsConfig bad;
    bad.k = 300;
    CHECK_THROWS_AS(stm::ps_init(10, 1, bad), InvalidArgument);
}

TEST_CASE("ps_forward selects the k strongest gated responses") {
    auto layer = stm::ps_init(64, 11);
    Engine rng(3);
    Matrix x(64, 12);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = uniform01(rng);

    Vector rho = Vector::Zero(225);
    const auto patterns = stm::ps_forward(layer, x, true);
    REQUIRE(patterns.size() == 12);
    for (int c = 0; c < 12; ++c) {
        Vector gated(225);
        for (int u = 0; u < 225; ++u) {
            double r = 0.0;
            for (int i = 0; i < 64; ++i) r += layer.weights(u, i) * x(i, c);
            gated(u) = r * (1.0 - rho(u));
        }
        const auto expect = oracle::sorted_topk(gated, 10);
        CHECK(patterns[c].active == expect);
        CHECK(patterns[c].support().sum() == 10.0);
        CHECK((patterns[c].values.array() != 0.0).count() == 10);
        for (int i : expect) rho(i) = 1.0;
        rho *= 0.95;
    }
    CHECK(layer.inhibition.isApprox(rho, 1e-15));
}

TEST_CASE("inhibition rotates winners for a repeated input") {
    auto layer = stm::ps_init(100, 2);
    Engine rng(8);
    Vector one(100);
    for (int i = 0; i < 100; ++i) one(i) = uniform01(rng);
    const Matrix x = one.replicate(1, 6);

    const auto free_run = stm::ps_forward(layer, x, false);
    for (const auto& p : free_run) CHECK(p.active == free_run[0].active);
    CHECK(layer.inhibition.isZero());

    const auto inhibited = stm::ps_forward(layer, x, true);
    CHECK(inhibited[0].active == free_run[0].active);
    for (std::size_t i = 0; i < inhibited.size(); ++i)
        for (std::size_t j = i + 1; j < inhibited.size(); ++j) CHECK(stm::overlap(inhibited[i], inhibited[j]) == 0);

    stm::clear_inhibition(layer);
    CHECK(stm::ps_forward(layer, x.leftCols(1), true)[0].active == free_run[0].active);
}

TEST_CASE("pc_store matches the pseudoinverse projection") {
    Engine rng(21);
    std::vector<Vector> patterns;
    for (int i = 0; i < 20; ++i) patterns.push_back(random_bipolar(rng, 225));
    auto net = stm::make_hopfield({}, 4);
    stm::pc_store(net, patterns);

    const Matrix expect = oracle::pseudoinverse_weights(patterns);
    CHECK((net.weights - expect).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(net.weights.isApprox(net.weights.transpose(), 0.0));
    CHECK(net.weights.diagonal().isZero());

    std::vector<int> order = net.update_order;
    std::sort(order.begin(), order.end());
    for (int i = 0; i < 225; ++i) CHECK(order[i] == i);
    CHECK(stm::make_hopfield({}, 4).update_order == net.update_order);
}

TEST_CASE("pc_store rejects degenerate pattern sets") {
    Engine rng(1);
    auto net = stm::make_hopfield({}, 1);
    const Vector a = random_bipolar(rng, 225);
    const Vector b = random_bipolar(rng, 225);
    CHECK_THROWS_AS(stm::pc_store(net, {a, b, a}), DegeneratePattern);
    CHECK_THROWS_AS(stm::pc_store(net, {a, -a}), DegeneratePattern);
    Vector half = a;
    half(0) = 0.5;
    CHECK_THROWS_AS(stm::pc_store(net, {half}), InvalidArgument);
    CHECK_THROWS_AS(stm::pc_store(net, {}), InvalidArgument);
    CHECK_THROWS_AS(stm::pc_converge(net, Vector::Constant(225, 1.5)), InvalidArgument);
    CHECK_THROWS_AS(stm::pc_converge(net, Vector::Zero(10)), InvalidArgument);
}

TEST_CASE("pc_converge completes corrupted patterns") {
    Engine rng(33);
    std::vector<Vector> patterns;
    for (int i = 0; i < 20; ++i) patterns.push_back(random_bipolar(rng, 225));
    auto net = stm::make_hopfield({}, 9);
    stm::pc_store(net, patterns);

    int fixed_points = 0;
    int completed = 0;
    for (const auto& p : patterns) {
        const Vector settled = stm::pc_converge(net, p);
        fixed_points += (settled.array().sign() == p.array()).all() ? 1 : 0;

        Vector cue = p;
        std::vector<int> idx(225);
        for (int i = 0; i < 225; ++i) idx[i] = i;
        aha::shuffle(idx.begin(), idx.end(), rng);
        for (int i = 0; i < 67; ++i) cue(idx[i]) = -cue(idx[i]);
        const Vector out = stm::pc_converge(net, cue);
        completed += (out.array().sign() == p.array()).all() ? 1 : 0;
    }
    CHECK(fixed_points == 20);
    CHECK(completed >= 19);
}

TEST_CASE("Hopfield energy never increases during settling") {
    Engine rng(5);
    std::vector<Vector> patterns;
    for (int i = 0; i < 15; ++i) patterns.push_back(random_bipolar(rng, 225));

    SUBCASE("sign dynamics") {
        stm::HopfieldConfig cfg;
        cfg.gain = 1e9;
        auto net = stm::make_hopfield(cfg, 2);
        stm::pc_store(net, patterns);
        for (int trial = 0; trial < 5; ++trial) {
            const Vector cue = random_bipolar(rng, 225);
            double prev = stm::hopfield_energy(net, cue);
            int violations = 0;
            stm::pc_converge(net, cue, [&](int, const Vector& s) {
                const double e = stm::hopfield_energy(net, s);
                violations += e > prev + 1e-9 ? 1 : 0;
                prev = e;
            });
            CHECK(violations == 0);
        }
    }
    SUBCASE("graded dynamics") {
        auto net = stm::make_hopfield({}, 2);
        stm::pc_store(net, patterns);
        const double gain = net.config.gain;
        for (int trial = 0; trial < 5; ++trial) {
            Vector cue(225);
            for (int i = 0; i < 225; ++i) cue(i) = uniform(rng, -0.9, 0.9);
            double prev = stm::hopfield_energy(net, cue) + graded_penalty(cue, gain);
            int violations = 0;
            stm::pc_converge(net, cue, [&](int, const Vector& s) {
                const double e = stm::hopfield_energy(net, s) + graded_penalty(s, gain);
                violations += e > prev + 1e-9 ? 1 : 0;
                prev = e;
            });
            CHECK(violations == 0);
        }
    }
}

TEST_CASE("condition_memorise") {
    CHECK(stm::condition_memorise(Vector{{0.0, 0.3, 0.0, 1.0}}) == Vector{{-1.0, 1.0, -1.0, 1.0}});
    CHECK_THROWS_AS(stm::condition_memorise(Vector{{0.1, -0.2}}), InvalidArgument);
}

TEST_CASE("condition_retrieve keeps exactly the k strongest units positive") {
    Engine rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        Vector y(225);
        for (int i = 0; i < 225; ++i) y(i) = uniform01(rng);
        const Vector v = stm::condition_retrieve(y);
        CHECK(v.minCoeff() >= -1.0);
        CHECK(v.maxCoeff() <= 1.0);

        const auto top = oracle::sorted_topk(y, 10);
        const std::set<int> top_set(top.begin(), top.end());
        for (int i = 0; i < 225; ++i) CHECK((v(i) > 0.0) == (top_set.count(i) == 1));

        // Offset by hand: the mean of the 10th and 11th transformed values.
        const auto top11 = oracle::sorted_topk(y, 11);
        const double scale = 20.0 / y.sum();
        const double theta = -0.5 * ((scale * y(top11[9]) - 1.0) + (scale * y(top11[10]) - 1.0));
        for (int i = 0; i < 225; ++i)
            CHECK(v(i) == doctest::Approx(std::clamp(scale * y(i) - 1.0 + theta, -1.0, 1.0)).epsilon(1e-12));
    }
}

TEST_CASE("condition_retrieve edge cases") {
    const Vector flat = Vector::Constant(225, 0.2);
    const Vector v = stm::condition_retrieve(flat);
    CHECK((v.array() > 0.0).count() == 10);
    for (int i = 0; i < 10; ++i) CHECK(v(i) > 0.0);
    CHECK_THROWS_AS(stm::condition_retrieve(Vector::Zero(225)), DegenerateCue);
    Vector neg = flat;
    neg(3) = -0.1;
    CHECK_THROWS_AS(stm::condition_retrieve(neg), InvalidArgument);
    stm::ConditioningParams p;
    p.k = 225;
    CHECK_THROWS_AS(stm::condition_retrieve(flat, p), InvalidArgument);
}

TEST_CASE("AHA study and recall on clean inputs") {
    const Matrix images = glyph_images(20, 71);
    auto state = stm::make_stm(small_stm(), 2704, 2704, 12);
    const Matrix ps_before = state.ps.weights;

    CHECK_THROWS_AS(stm::recall(state, images), InvalidState);
    const auto report = stm::study(state, images, images);
    CHECK(report.pr_losses.size() == 60);
    CHECK(report.pr_losses.back() < report.pr_losses.front());
    CHECK(report.pm_losses.back() < report.pm_losses.front());
    CHECK(state.ps.weights == ps_before);
    CHECK_THROWS_AS(stm::study(state, images, images), InvalidState);

    const auto r = stm::recall(state, images);
    int pr_bits = 0;
    int pc_hits = 0;
    double pm_loss = 0.0;
    for (int c = 0; c < 20; ++c) {
        const auto top = oracle::sorted_topk(r.pr_out.col(c), 10);
        for (int i : top) pr_bits += state.study_supports(i, c) > 0.0 ? 1 : 0;
        pc_hits += nearest(state.engrams, r.pc_out.col(c)) == c ? 1 : 0;
        pm_loss += oracle::scalar_mse(r.pm_images.col(c), images.col(c)) / 20.0;
    }
    MESSAGE("PR top-k bits " << pr_bits << "/200, PC hits " << pc_hits << ", PM mse " << pm_loss);
    CHECK(pr_bits >= 190);
    CHECK(pc_hits >= 19);
    CHECK(pm_loss < 0.05);

    // Same seed and inputs: bit-identical outputs.
    auto again = stm::make_stm(small_stm(), 2704, 2704, 12);
    stm::study(again, images, images);
    const auto r2 = stm::recall(again, images);
    CHECK(r2.pm_images == r.pm_images);
    CHECK(r2.pc_out == r.pc_out);

    stm::reset(state);
    const auto fresh = stm::make_stm(small_stm(), 2704, 2704, 12);
    CHECK(state.pr.w1 == fresh.pr.w1);
    CHECK(state.pm.w2 == fresh.pm.w2);
    CHECK(state.ps.weights == ps_before);
    CHECK(state.ps.inhibition.isZero());
    CHECK_FALSE(state.studied);
    stm::study(state, images, images);
    CHECK(stm::recall(state, images).pm_images == r.pm_images);
}

TEST_CASE("make_stm validates its configuration") {
    stm::StmConfig cfg;
    cfg.pc.units = 100;
    CHECK_THROWS_AS(stm::make_stm(cfg, 10, 10, 1), InvalidArgument);
    auto state = stm::make_stm(small_stm(), 10, 4, 1);
    CHECK_THROWS_AS(stm::study(state, Matrix::Ones(10, 3), Matrix::Ones(4, 2)), InvalidArgument);
    CHECK_THROWS_AS(stm::study(state, Matrix::Ones(9, 3), Matrix::Ones(4, 3)), InvalidArgument);
}
