#pragma once

#include "aha/nn/types.hpp"

namespace aha::nn {

/// Channel-major activation volume: `data` is channels x (rows * cols), with
/// spatial position r * cols + c.
struct Volume {
    int channels = 0;
    int rows = 0;
    int cols = 0;
    Matrix data;

    double at(int ch, int r, int c) const { return data(ch, r * cols + c); }
    double& at(int ch, int r, int c) { return data(ch, r * cols + c); }
};

/// Bank of single-channel filters. Row i of `filters` holds filter i in
/// row-major order (filter_rows x filter_cols).
struct ConvLayer {
    Matrix filters;
    int filter_rows = 0;
    int filter_cols = 0;
    int stride = 1;
    bool tied_decode = true;
    // Set once the filters come from pretraining or a filter file.
    bool trained = false;

    int count() const { return static_cast<int>(filters.rows()); }
};

int conv_output_size(int input, int filter, int stride);

/// Extracts every valid filter-sized patch: (filter_rows * filter_cols) x positions.
Matrix im2col(const Matrix& image, int filter_rows, int filter_cols, int stride);

/// Scatter-adds patch columns back into an image of the given size.
Matrix col2im(const Matrix& columns, int rows, int cols, int filter_rows, int filter_cols,
              int stride);

/// Valid-padding cross-correlation of a 2-D image with every filter.
Volume conv2d(const Matrix& image, const ConvLayer& layer);
Volume conv2d(const Matrix& image, const ConvLayer& layer, int stride);

int pool_output_size(int input, int size, int stride);

/// Per-channel max pooling. Windows that run past the edge are kept and
/// pooled over their in-bounds part.
Volume max_pool(const Volume& volume, int size, int stride);

enum class Padding { zero, replicate };

/// Same-size 2-D correlation; `kernel` must have odd sides.
Matrix correlate_same(const Matrix& image, const Matrix& kernel, Padding padding = Padding::zero);

}  // namespace aha::nn
