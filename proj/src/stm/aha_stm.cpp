#include "aha/stm/aha_stm.hpp"

#include "aha/errors.hpp"
#include "aha/rng.hpp"

namespace aha::stm {

namespace {

nn::DenseNet2Config pr_config(const StmConfig& c, int input_dim) {
    nn::DenseNet2Config cfg;
    cfg.inputs = input_dim;
    cfg.hidden = c.pr_hidden;
    cfg.outputs = c.ps.units;
    cfg.hidden_activation = nn::Activation::leaky_relu;
    cfg.output_activation = nn::Activation::sigmoid;
    cfg.learning_rate = c.pr_learning_rate;
    cfg.l2 = c.pr_l2;
    return cfg;
}

nn::DenseNet2Config pm_config(const StmConfig& c, int image_pixels) {
    nn::DenseNet2Config cfg;
    cfg.inputs = c.ps.units;
    cfg.hidden = c.pm_hidden;
    cfg.outputs = image_pixels;
    cfg.hidden_activation = nn::Activation::leaky_relu;
    cfg.output_activation = nn::Activation::leaky_relu;
    cfg.learning_rate = c.pm_learning_rate;
    cfg.l2 = c.pm_l2;
    return cfg;
}

std::vector<double> train(nn::DenseNet2& net, const nn::Matrix& x, const nn::Matrix& y, int steps, nn::Loss loss) {
    if (steps < 0) throw InvalidArgument("train: negative step count");
    if (x.cols() != y.cols()) throw InvalidArgument("train: sample count mismatch");
    std::vector<double> losses;
    losses.reserve(static_cast<std::size_t>(steps));
    for (int s = 0; s < steps; ++s) losses.push_back(nn::train_step(net, x, y, loss));
    return losses;
}

}  // namespace

StmState make_stm(const StmConfig& config, int input_dim, int image_pixels, std::uint64_t seed) {
    if (config.pc.units != config.ps.units) throw InvalidArgument("make_stm: PS and PC must have the same units");
    if (input_dim <= 0 || image_pixels <= 0) throw InvalidArgument("make_stm: empty input or output");
    if (config.train_steps < 0) throw InvalidArgument("make_stm: negative train_steps");

    StmState stm;
    stm.config = config;
    stm.seed = seed;
    stm.ps = ps_init(input_dim, derive_seed(seed, {1}), config.ps);
    stm.pr = nn::make_dense_net(pr_config(config, input_dim), derive_seed(seed, {2}));
    stm.pc = make_hopfield(config.pc, derive_seed(seed, {3}));
    stm.pm = nn::make_dense_net(pm_config(config, image_pixels), derive_seed(seed, {4}));
    return stm;
}

void reset(StmState& stm) {
    clear_inhibition(stm.ps);
    nn::reset(stm.pr, derive_seed(stm.seed, {2}));
    stm.pc = make_hopfield(stm.config.pc, derive_seed(stm.seed, {3}));
    nn::reset(stm.pm, derive_seed(stm.seed, {4}));
    stm.study_targets.clear();
    stm.study_supports.resize(0, 0);
    stm.engrams.resize(0, 0);
    stm.study_images.resize(0, 0);
    stm.studied = false;
}

std::vector<double> pr_train(nn::DenseNet2& pr, const nn::Matrix& features, const nn::Matrix& supports, int steps) {
    return train(pr, features, supports, steps, nn::Loss::multilabel_xent);
}

nn::Matrix pr_infer(const nn::DenseNet2& pr, const nn::Matrix& features) {
    return nn::dense_forward(pr, features).out;
}

std::vector<double> pm_train(nn::DenseNet2& pm, const nn::Matrix& states, const nn::Matrix& images, int steps) {
    return train(pm, states, images, steps, nn::Loss::mse);
}

nn::Matrix pm_infer(const nn::DenseNet2& pm, const nn::Matrix& states) {
    return nn::dense_forward(pm, states).out;
}

StudyReport study(StmState& stm, const nn::Matrix& features, const nn::Matrix& images) {
    if (stm.studied) throw InvalidState("study: state already holds a study set; call reset first");
    if (features.cols() == 0 || features.cols() != images.cols())
        throw InvalidArgument("study: features and images must have the same non-zero sample count");
    if (features.rows() != stm.pr.config.inputs) throw InvalidArgument("study: feature dimension mismatch");
    if (images.rows() != stm.pm.config.outputs) throw InvalidArgument("study: image dimension mismatch");

    const auto n = features.cols();
    const int units = stm.config.ps.units;
    stm.study_targets = ps_forward(stm.ps, features, true);
    stm.study_supports.resize(units, n);
    stm.engrams.resize(units, n);
    std::vector<nn::Vector> engrams;
    engrams.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index c = 0; c < n; ++c) {
        stm.study_supports.col(c) = stm.study_targets[c].support();
        engrams.push_back(condition_memorise(stm.study_supports.col(c)));
        stm.engrams.col(c) = engrams.back();
    }
    pc_store(stm.pc, engrams);

    StudyReport report;
    report.pr_losses = pr_train(stm.pr, features, stm.study_supports, stm.config.train_steps);

    nn::Matrix settled(units, n);
    for (Eigen::Index c = 0; c < n; ++c) settled.col(c) = pc_converge(stm.pc, engrams[c]);
    report.pm_losses = pm_train(stm.pm, settled, images, stm.config.train_steps);

    nn::release_optimizer(stm.pr);
    nn::release_optimizer(stm.pm);
    stm.study_images = images;
    stm.studied = true;
    return report;
}

RecallResult recall(const StmState& stm, const nn::Matrix& features) {
    if (!stm.studied) throw InvalidState("recall: nothing has been studied");
    if (features.rows() != stm.pr.config.inputs) throw InvalidArgument("recall: feature dimension mismatch");

    RecallResult r;
    r.pr_out = pr_infer(stm.pr, features);
    r.cues = condition_retrieve_batch(r.pr_out, stm.config.conditioning);
    r.pc_out.resize(r.cues.rows(), r.cues.cols());
    for (Eigen::Index c = 0; c < r.cues.cols(); ++c) r.pc_out.col(c) = pc_converge(stm.pc, r.cues.col(c));
    r.pm_images = pm_infer(stm.pm, r.pc_out);
    return r;
}

}  // namespace aha::stm
