#include "aha/vc/scae.hpp"

#include <cmath>
#include <limits>

#include "aha/errors.hpp"
#include "aha/nn/adam.hpp"
#include "aha/nn/topk.hpp"
#include "aha/rng.hpp"

namespace aha::vc {

namespace {

// Per-position top-k over channels of a channels x positions block.
nn::Matrix winner_mask(const nn::Matrix& activations, int k) {
    nn::Matrix mask = nn::Matrix::Zero(activations.rows(), activations.cols());
    if (k >= activations.rows()) {
        mask.setOnes();
        return mask;
    }
    for (Eigen::Index p = 0; p < activations.cols(); ++p) {
        for (int ch : nn::topk_indices(activations.col(p), k)) mask(ch, p) = 1.0;
    }
    return mask;
}

// Grants every filter without a win its strongest response in the batch.
void enforce_lifetime(const nn::Matrix& activations, nn::Matrix& mask) {
    for (Eigen::Index f = 0; f < activations.rows(); ++f) {
        if (mask.row(f).sum() > 0.0) continue;
        Eigen::Index best = 0;
        activations.row(f).maxCoeff(&best);
        mask(f, best) = 1.0;
    }
}

struct BatchCodes {
    nn::Matrix patches;      // filter area x (batch * positions)
    nn::Matrix activations;  // filters x (batch * positions)
    nn::Matrix mask;
    int out_rows = 0;
    int out_cols = 0;
};

BatchCodes encode_columns(std::span<const nn::Matrix> images, const nn::ConvLayer& layer, int k, bool training) {
    BatchCodes b;
    if (images.empty()) return b;
    b.out_rows = nn::conv_output_size(static_cast<int>(images[0].rows()), layer.filter_rows, layer.stride);
    b.out_cols = nn::conv_output_size(static_cast<int>(images[0].cols()), layer.filter_cols, layer.stride);
    const Eigen::Index positions = static_cast<Eigen::Index>(b.out_rows) * b.out_cols;
    b.patches.resize(layer.filters.cols(), positions * static_cast<Eigen::Index>(images.size()));
    for (std::size_t i = 0; i < images.size(); ++i) {
        if (images[i].rows() != images[0].rows() || images[i].cols() != images[0].cols()) {
            throw InvalidArgument("scae_encode: images in a batch must share a size");
        }
        b.patches.middleCols(static_cast<Eigen::Index>(i) * positions, positions) =
            nn::im2col(images[i], layer.filter_rows, layer.filter_cols, layer.stride);
    }
    b.activations.noalias() = layer.filters * b.patches;
    b.mask = winner_mask(b.activations, k);
    if (training) enforce_lifetime(b.activations, b.mask);
    return b;
}

nn::Volume slice_volume(const BatchCodes& b, std::size_t index) {
    const Eigen::Index positions = static_cast<Eigen::Index>(b.out_rows) * b.out_cols;
    nn::Volume v;
    v.channels = static_cast<int>(b.activations.rows());
    v.rows = b.out_rows;
    v.cols = b.out_cols;
    const auto offset = static_cast<Eigen::Index>(index) * positions;
    v.data = (b.activations.middleCols(offset, positions).array() * b.mask.middleCols(offset, positions).array())
                 .matrix();
    return v;
}

}  // namespace

nn::ConvLayer make_conv_layer(const VcConfig& cfg, std::uint64_t seed) {
    nn::ConvLayer layer;
    layer.filter_rows = cfg.filter_rows;
    layer.filter_cols = cfg.filter_cols;
    layer.stride = cfg.stride_pretrain;
    layer.tied_decode = true;
    const double bound = 1.0 / std::sqrt(static_cast<double>(cfg.filter_rows * cfg.filter_cols));
    Engine rng(seed);
    layer.filters.resize(cfg.filters, cfg.filter_rows * cfg.filter_cols);
    for (Eigen::Index j = 0; j < layer.filters.cols(); ++j)
        for (Eigen::Index i = 0; i < layer.filters.rows(); ++i) layer.filters(i, j) = uniform(rng, -bound, bound);
    return layer;
}

std::vector<nn::Volume> scae_encode_batch(std::span<const nn::Matrix> images, const nn::ConvLayer& layer, int k,
                                          bool training) {
    const BatchCodes b = encode_columns(images, layer, k, training);
    std::vector<nn::Volume> out;
    out.reserve(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) out.push_back(slice_volume(b, i));
    return out;
}

nn::Volume scae_encode(const nn::Matrix& image, const nn::ConvLayer& layer, int k, bool training) {
    return scae_encode_batch(std::span<const nn::Matrix>(&image, 1), layer, k, training).front();
}

nn::Matrix scae_decode(const nn::Volume& code, const nn::ConvLayer& layer, int rows, int cols) {
    const nn::Matrix columns = layer.filters.transpose() * code.data;
    return nn::col2im(columns, rows, cols, layer.filter_rows, layer.filter_cols, layer.stride);
}

double scae_reconstruction_loss(std::span<const nn::Matrix> images, const nn::ConvLayer& layer, int k) {
    if (images.empty()) return 0.0;
    double total = 0.0;
    const auto codes = scae_encode_batch(images, layer, k, false);
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto& img = images[i];
        const nn::Matrix recon = scae_decode(codes[i], layer, static_cast<int>(img.rows()), static_cast<int>(img.cols()));
        total += (recon - img).squaredNorm() / static_cast<double>(img.size());
    }
    return total / static_cast<double>(images.size());
}

PretrainResult scae_pretrain(std::span<const nn::Matrix> images, const VcConfig& cfg, std::uint64_t seed,
                             std::span<const nn::Matrix> held_out, const PretrainProgress& progress) {
    if (images.empty()) throw InvalidArgument("scae_pretrain: no training images");
    PretrainResult result;
    nn::ConvLayer& layer = result.layer;
    layer = make_conv_layer(cfg, derive_seed(seed, {1}));
    result.initial_loss = scae_reconstruction_loss(held_out, layer, cfg.k_pretrain);

    Engine sampler(derive_seed(seed, {2}));
    nn::AdamMoments moments;
    const nn::AdamConfig adam{};
    const int rows = static_cast<int>(images[0].rows());
    const int cols = static_cast<int>(images[0].cols());
    const double pixels = static_cast<double>(rows) * cols;
    std::vector<nn::Matrix> batch(static_cast<std::size_t>(cfg.pretrain_batch_size));
    result.batch_losses.reserve(static_cast<std::size_t>(cfg.pretrain_batches));

    for (int step = 0; step < cfg.pretrain_batches; ++step) {
        for (auto& img : batch) img = images[uniform_index(sampler, images.size())];
        const BatchCodes b = encode_columns(batch, layer, cfg.k_pretrain, true);
        const nn::Matrix codes = (b.activations.array() * b.mask.array()).matrix();
        const Eigen::Index positions = static_cast<Eigen::Index>(b.out_rows) * b.out_cols;

        // Decoder side: reconstruct each image, collect d(loss)/d(patch).
        nn::Matrix recon_columns;
        recon_columns.noalias() = layer.filters.transpose() * codes;
        nn::Matrix d_patches(b.patches.rows(), b.patches.cols());
        double loss = 0.0;
        const double scale = 2.0 / (pixels * static_cast<double>(batch.size()));
        for (std::size_t i = 0; i < batch.size(); ++i) {
            const auto offset = static_cast<Eigen::Index>(i) * positions;
            const nn::Matrix recon = nn::col2im(recon_columns.middleCols(offset, positions), rows, cols,
                                                layer.filter_rows, layer.filter_cols, layer.stride);
            const nn::Matrix residual = recon - batch[i];
            loss += residual.squaredNorm() / pixels;
            d_patches.middleCols(offset, positions) =
                nn::im2col(scale * residual, layer.filter_rows, layer.filter_cols, layer.stride);
        }
        loss /= static_cast<double>(batch.size());
        if (!std::isfinite(loss)) throw TrainingDiverged("scae_pretrain: reconstruction loss became non-finite");

        // Tied weights: gradient through decoder plus through the selected codes.
        nn::Matrix grad;
        grad.noalias() = codes * d_patches.transpose();
        nn::Matrix d_codes;
        d_codes.noalias() = layer.filters * d_patches;
        d_codes.array() *= b.mask.array();
        grad.noalias() += d_codes * b.patches.transpose();

        nn::adam_step(layer.filters, grad, moments, adam, cfg.learning_rate);
        result.batch_losses.push_back(loss);
        if (progress) progress(step, loss);
    }

    result.final_loss = scae_reconstruction_loss(held_out, layer, cfg.k_pretrain);
    layer.trained = true;
    return result;
}

}  // namespace aha::vc
