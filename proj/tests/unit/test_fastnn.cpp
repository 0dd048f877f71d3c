#include <limits>

#include "doctest.h"

#include "aha/errors.hpp"
#include "aha/rng.hpp"
#include "aha/stm/fastnn.hpp"
#include "aha/vc/image.hpp"
#include "oracles.hpp"
#include "synthetic_omniglot.hpp"

using namespace aha;
using nn::Matrix;

namespace {

Matrix glyph_images(int count, std::uint64_t seed) {
    Engine rng(seed);
    Matrix out(52 * 52, count);
    for (int i = 0; i < count; ++i) {
        const auto glyph = synth::random_glyph(rng);
        out.col(i) = vc::flatten(vc::preprocess(synth::render(glyph, rng)));
    }
    return out;
}

}  // namespace

TEST_CASE("FastNN memorises a study set") {
    const Matrix images = glyph_images(20, 5);
    auto state = stm::make_fastnn({}, 2704, 2704, 3);
    CHECK(state.net.config.hidden == 100);
    CHECK(state.net.config.output_activation == nn::Activation::leaky_relu);
    CHECK_THROWS_AS(stm::fastnn_recall(state, images), InvalidState);

    const auto losses = stm::fastnn_study(state, images, images);
    REQUIRE(losses.size() == 60);
    CHECK(losses.back() < 0.5 * losses.front());
    CHECK(state.study_latents.rows() == 100);
    CHECK(state.study_latents.cols() == 20);
    CHECK_THROWS_AS(stm::fastnn_study(state, images, images), InvalidState);

    const auto r = stm::fastnn_recall(state, images);
    CHECK(r.latents == state.study_latents);
    CHECK(r.images.rows() == 2704);

    auto other = stm::make_fastnn({}, 2704, 2704, 3);
    stm::fastnn_study(other, images, images);
    CHECK(stm::fastnn_recall(other, images).images == r.images);

    stm::reset(state);
    CHECK_FALSE(state.studied);
    CHECK(state.net.w1 == stm::make_fastnn({}, 2704, 2704, 3).net.w1);
}

TEST_CASE("FastNN rejects mismatched inputs") {
    auto state = stm::make_fastnn({}, 8, 4, 1);
    CHECK_THROWS_AS(stm::fastnn_study(state, Matrix::Ones(8, 2), Matrix::Ones(4, 3)), InvalidArgument);
    CHECK_THROWS_AS(stm::fastnn_study(state, Matrix::Ones(7, 2), Matrix::Ones(4, 2)), InvalidArgument);
    stm::FastNnConfig bad;
    bad.train_steps = -1;
    CHECK_THROWS_AS(stm::make_fastnn(bad, 8, 4, 1), InvalidArgument);
}
