#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "doctest.h"

#include "aha/errors.hpp"
#include "aha/nn/kernels.hpp"
#include "aha/vc/filter_io.hpp"
#include "aha/vc/image.hpp"
#include "aha/vc/interest_filter.hpp"
#include "aha/vc/scae.hpp"
#include "aha/vc/vision_component.hpp"
#include "oracles.hpp"
#include "synthetic_omniglot.hpp"

using namespace aha;
using nn::Matrix;

namespace {

vc::ImageSample uniform_sample(std::uint8_t value) {
    vc::ImageSample s;
    s.rows = s.cols = 105;
    s.pixels.assign(105 * 105, value);
    return s;
}

std::vector<Matrix> synthetic_images(int count, std::uint64_t seed) {
    std::vector<Matrix> out;
    Engine rng(seed);
    while (static_cast<int>(out.size()) < count) {
        const auto glyph = synth::random_glyph(rng);
        for (int d = 0; d < 4 && static_cast<int>(out.size()) < count; ++d) out.push_back(vc::preprocess(synth::render(glyph, rng)));
    }
    return out;
}

vc::VcConfig small_config() {
    vc::VcConfig cfg;
    cfg.filters = 16;
    cfg.pretrain_batches = 150;
    cfg.pretrain_batch_size = 16;
    return cfg;
}

}  // namespace

TEST_CASE("preprocess maps strokes to one and halves the size") {
    const Matrix background = vc::preprocess(uniform_sample(255));
    CHECK(background.rows() == 52);
    CHECK(background.cols() == 52);
    CHECK(background.isZero());
    CHECK(vc::preprocess(uniform_sample(0)).isApproxToConstant(1.0, 1e-12));

    vc::ImageSample light = uniform_sample(255);
    light.polarity = vc::Polarity::light_on_dark;
    CHECK(vc::preprocess(light).isApproxToConstant(1.0, 1e-12));

    vc::ImageSample checker = uniform_sample(0);
    double source_mean = 0.0;
    for (int r = 0; r < 105; ++r)
        for (int c = 0; c < 105; ++c) {
            checker.pixels[r * 105 + c] = ((r + c) % 2) ? 255 : 0;
            source_mean += ((r + c) % 2) ? 0.0 : 1.0;
        }
    source_mean /= 105.0 * 105.0;
    CHECK(std::abs(vc::preprocess(checker).mean() - source_mean) < 0.02);

    vc::ImageSample wrong = uniform_sample(0);
    wrong.rows = 104;
    CHECK_THROWS_AS(vc::preprocess(wrong), InvalidArgument);
}

TEST_CASE("flatten is row-major and inverts") {
    Matrix m{{1, 2, 3}, {4, 5, 6}};
    CHECK(vc::flatten(m) == nn::Vector{{1, 2, 3, 4, 5, 6}});
    CHECK(vc::unflatten(vc::flatten(m), 2, 3) == m);
}

TEST_CASE("scae_encode keeps the k strongest channels per position") {
    vc::VcConfig cfg;
    cfg.filters = 12;
    nn::ConvLayer layer = vc::make_conv_layer(cfg, 3);
    layer.stride = 2;
    Engine rng(5);
    Matrix image(30, 30);
    for (Eigen::Index i = 0; i < image.size(); ++i) image.data()[i] = uniform01(rng);
    const nn::Volume raw = nn::conv2d(image, layer);

    CHECK(vc::scae_encode(image, layer, cfg.filters).data == raw.data);

    const nn::Volume one = vc::scae_encode(image, layer, 1);
    for (Eigen::Index p = 0; p < one.data.cols(); ++p) CHECK((one.data.col(p).array() != 0.0).count() == 1);

    const nn::Volume four = vc::scae_encode(image, layer, 4);
    for (Eigen::Index p = 0; p < four.data.cols(); ++p) {
        CHECK((four.data.col(p).array() != 0.0).count() <= 4);
        const auto keep = oracle::sorted_topk(raw.data.col(p), 4);
        for (Eigen::Index ch = 0; ch < raw.data.rows(); ++ch) {
            const bool kept = std::find(keep.begin(), keep.end(), ch) != keep.end();
            CHECK(four.data(ch, p) == (kept ? raw.data(ch, p) : 0.0));
        }
    }
}

TEST_CASE("lifetime sparsity gives every filter a win in a training batch") {
    vc::VcConfig cfg;
    cfg.filters = 40;
    nn::ConvLayer layer = vc::make_conv_layer(cfg, 8);
    layer.stride = 5;
    const auto images = synthetic_images(3, 9);
    const auto eval = vc::scae_encode_batch(images, layer, 1, false);
    const auto train = vc::scae_encode_batch(images, layer, 1, true);
    int idle_eval = 0;
    for (int f = 0; f < cfg.filters; ++f) {
        bool eval_win = false, train_win = false;
        for (std::size_t i = 0; i < images.size(); ++i) {
            eval_win |= (eval[i].data.row(f).array() != 0.0).any();
            train_win |= (train[i].data.row(f).array() != 0.0).any();
        }
        idle_eval += eval_win ? 0 : 1;
        CHECK(train_win);
    }
    // The grant only matters if some filter lost everywhere.
    CHECK(idle_eval > 0);
}

TEST_CASE("interest filter") {
    const vc::InterestConfig cfg;
    SUBCASE("uniform image has no interest") {
        CHECK(vc::interest_mask(Matrix::Constant(52, 52, 0.7), cfg).isZero());
        CHECK(vc::interest_mask(Matrix::Zero(52, 52), cfg).isZero());
    }
    SUBCASE("single bright pixel gives a bump centred on it") {
        Matrix img = Matrix::Zero(52, 52);
        img(20, 30) = 1.0;
        const Matrix mask = vc::interest_mask(img, cfg);
        CHECK(mask(20, 30) == doctest::Approx(1.0));
        double mass = 0.0, row_moment = 0.0, col_moment = 0.0;
        for (int r = 0; r < 52; ++r)
            for (int c = 0; c < 52; ++c) {
                mass += mask(r, c);
                row_moment += r * mask(r, c);
                col_moment += c * mask(r, c);
            }
        CHECK(row_moment / mass == doctest::Approx(20.0).epsilon(1e-9));
        CHECK(col_moment / mass == doctest::Approx(30.0).epsilon(1e-9));
        for (int d = 1; d < 12; ++d) {
            CHECK(mask(20, 30 + d) == doctest::Approx(mask(20, 30 - d)));
            CHECK(mask(20 + d, 30) == doctest::Approx(mask(20 - d, 30)));
        }
        CHECK(mask(20, 45) < 0.1);
        CHECK(mask(0, 0) < 1e-3);
    }
    SUBCASE("keypoint count matches a brute-force oracle") {
        Matrix img = Matrix::Zero(52, 52);
        for (int r = 0; r < 52; ++r)
            for (int c = 0; c < 52; ++c) {
                const double a = std::hypot(r - 15.0, c - 15.0), b = std::hypot(r - 36.0, c - 34.0);
                img(r, c) = std::max(std::exp(-a * a / 18.0), std::exp(-b * b / 8.0));
            }
        const Matrix keypoints = vc::interest_keypoints(img, cfg);
        const long count = (keypoints.array() > 0.0).count();
        CHECK(count <= 2 * cfg.k_features);

        // Oracle: naive DoG, window-max suppression, count per polarity.
        const Matrix dog = nn::dog_kernel(cfg.dog);
        Matrix response = Matrix::Zero(52, 52);
        for (int r = 0; r < 52; ++r)
            for (int c = 0; c < 52; ++c)
                for (int y = -3; y <= 3; ++y)
                    for (int x = -3; x <= 3; ++x)
                        response(r, c) += dog(y + 3, x + 3) * img(std::clamp(r + y, 0, 51), std::clamp(c + x, 0, 51));
        long expected = 0;
        for (double sign : {1.0, -1.0}) {
            long maxima = 0;
            for (int r = 0; r < 52; ++r)
                for (int c = 0; c < 52; ++c) {
                    const double v = sign * response(r, c);
                    if (v <= 1e-9) continue;
                    bool best = true;
                    for (int y = std::max(0, r - 2); y <= std::min(51, r + 2); ++y)
                        for (int x = std::max(0, c - 2); x <= std::min(51, c + 2); ++x) best &= sign * response(y, x) <= v;
                    maxima += best;
                }
            expected += std::min<long>(maxima, cfg.k_features);
        }
        CHECK(count == expected);
        CHECK(count > 0);
    }
    SUBCASE("mask is within [0, 1] on real strokes") {
        for (const auto& img : synthetic_images(8, 44)) {
            const Matrix m = vc::interest_mask(img, cfg);
            CHECK(m.minCoeff() >= 0.0);
            CHECK(m.maxCoeff() <= 1.0);
            CHECK(m.maxCoeff() > 0.0);
        }
    }
}

TEST_CASE("crop_center takes the middle of the grid") {
    Matrix m = Matrix::Zero(52, 52);
    m(4, 4) = 1.0;
    m(46, 46) = 2.0;
    const Matrix c = vc::crop_center(m, 43, 43);
    CHECK(c(0, 0) == 1.0);
    CHECK(c(42, 42) == 2.0);
}

TEST_CASE("pretraining and evaluation encoding") {
    const auto images = synthetic_images(120, 1);
    const auto held_out = synthetic_images(16, 2);
    const vc::VcConfig cfg = small_config();

    const vc::PretrainResult result = vc::scae_pretrain(images, cfg, 42, held_out);
    CHECK(result.batch_losses.size() == static_cast<std::size_t>(cfg.pretrain_batches));
    CHECK(result.final_loss < result.initial_loss);
    CHECK(result.layer.trained);

    SUBCASE("deterministic for a seed") {
        const auto again = vc::scae_pretrain(images, cfg, 42, held_out);
        CHECK(again.layer.filters == result.layer.filters);
    }

    SUBCASE("filters are distinct") {
        const Matrix& f = result.layer.filters;
        for (Eigen::Index i = 0; i < f.rows(); ++i)
            for (Eigen::Index j = i + 1; j < f.rows(); ++j)
                CHECK(f.row(i).dot(f.row(j)) / (f.row(i).norm() * f.row(j).norm()) < 0.99);
    }

    SUBCASE("feature vectors") {
        vc::VcConfig eval = cfg;
        CHECK_THROWS_AS(vc::vc_forward(images[0], vc::make_conv_layer(cfg, 1), eval), InvalidState);

        const vc::FeatureVector fv = vc::vc_forward(images[0], result.layer, eval);
        CHECK(fv.channels == cfg.filters);
        CHECK(fv.rows == 11);
        CHECK(fv.cols == 11);
        CHECK(fv.values.size() == cfg.filters * 121);
        CHECK(fv.values.minCoeff() >= 0.0);
        CHECK(vc::vc_forward(images[0], result.layer, eval).values == fv.values);

        CHECK(vc::vc_forward(Matrix::Zero(52, 52), result.layer, eval).values.isZero());

        vc::VcConfig unmasked = eval;
        unmasked.interest_filter = false;
        for (int i = 0; i < 5; ++i) {
            const double masked_l1 = vc::vc_forward(images[i], result.layer, eval).values.lpNorm<1>();
            const double raw_l1 = vc::vc_forward(images[i], result.layer, unmasked).values.lpNorm<1>();
            CHECK(masked_l1 < raw_l1);
        }
    }
}

TEST_CASE("pretraining on one repeated image nearly reconstructs it") {
    const auto image = synthetic_images(1, 77);
    vc::VcConfig cfg = small_config();
    cfg.filters = 32;
    cfg.pretrain_batches = 400;
    cfg.pretrain_batch_size = 4;
    cfg.learning_rate = 0.01;
    const auto result = vc::scae_pretrain(image, cfg, 1, image);
    MESSAGE("single-image reconstruction mse " << result.initial_loss << " -> " << result.final_loss);
    CHECK(result.final_loss < 0.05 * result.initial_loss);
}

TEST_CASE("filter file round trip") {
    vc::VcConfig cfg;
    cfg.filters = 5;
    cfg.filter_rows = 3;
    cfg.filter_cols = 4;
    const nn::ConvLayer layer = vc::make_conv_layer(cfg, 12);
    const auto path = std::filesystem::temp_directory_path() / "aha_test_filters.bin";
    vc::save_filters(path, layer);
    CHECK(std::filesystem::file_size(path) == 16 + 4 * 5 * 12);

    std::ifstream in(path, std::ios::binary);
    char header[16];
    in.read(header, 16);
    CHECK(std::string(header, 4) == "AHAF");
    CHECK(header[4] == 5);
    CHECK(header[8] == 3);
    CHECK(header[12] == 4);

    const nn::ConvLayer loaded = vc::load_filters(path);
    CHECK(loaded.trained);
    CHECK(loaded.count() == 5);
    CHECK(loaded.filter_rows == 3);
    CHECK(loaded.filter_cols == 4);
    CHECK((loaded.filters - layer.filters.cast<float>().cast<double>()).isZero(0.0));

    std::ofstream(path, std::ios::binary) << "NOPE0000000000000000";
    CHECK_THROWS_AS(vc::load_filters(path), IngestionError);
    CHECK_THROWS_AS(vc::load_filters(path.string() + ".missing"), IngestionError);
    std::filesystem::remove(path);
}
