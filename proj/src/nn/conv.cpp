#include "aha/nn/conv.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "aha/errors.hpp"

namespace aha::nn {

int conv_output_size(int input, int filter, int stride) {
    if (stride < 1) throw InvalidArgument("conv: stride must be >= 1");
    if (input < filter) {
        throw InvalidArgument("conv: input size " + std::to_string(input) +
                              " smaller than filter size " + std::to_string(filter));
    }
    return (input - filter) / stride + 1;
}

Matrix im2col(const Matrix& image, int filter_rows, int filter_cols, int stride) {
    const int out_rows = conv_output_size(static_cast<int>(image.rows()), filter_rows, stride);
    const int out_cols = conv_output_size(static_cast<int>(image.cols()), filter_cols, stride);
    Matrix columns(filter_rows * filter_cols, out_rows * out_cols);
    for (int r = 0; r < out_rows; ++r) {
        for (int c = 0; c < out_cols; ++c) {
            const int pos = r * out_cols + c;
            for (int fr = 0; fr < filter_rows; ++fr)
                for (int fc = 0; fc < filter_cols; ++fc)
                    columns(fr * filter_cols + fc, pos) = image(r * stride + fr, c * stride + fc);
        }
    }
    return columns;
}

Matrix col2im(const Matrix& columns, int rows, int cols, int filter_rows, int filter_cols,
              int stride) {
    const int out_rows = conv_output_size(rows, filter_rows, stride);
    const int out_cols = conv_output_size(cols, filter_cols, stride);
    if (columns.rows() != filter_rows * filter_cols || columns.cols() != out_rows * out_cols) {
        throw InvalidArgument("col2im: column matrix shape does not match geometry");
    }
    Matrix image = Matrix::Zero(rows, cols);
    for (int r = 0; r < out_rows; ++r) {
        for (int c = 0; c < out_cols; ++c) {
            const int pos = r * out_cols + c;
            for (int fr = 0; fr < filter_rows; ++fr)
                for (int fc = 0; fc < filter_cols; ++fc)
                    image(r * stride + fr, c * stride + fc) += columns(fr * filter_cols + fc, pos);
        }
    }
    return image;
}

Volume conv2d(const Matrix& image, const ConvLayer& layer) { return conv2d(image, layer, layer.stride); }

Volume conv2d(const Matrix& image, const ConvLayer& layer, int stride) {
    if (layer.filters.cols() != layer.filter_rows * layer.filter_cols) {
        throw InvalidArgument("conv2d: filter bank shape does not match filter size");
    }
    Volume out;
    out.channels = layer.count();
    out.rows = conv_output_size(static_cast<int>(image.rows()), layer.filter_rows, stride);
    out.cols = conv_output_size(static_cast<int>(image.cols()), layer.filter_cols, stride);
    out.data.noalias() = layer.filters * im2col(image, layer.filter_rows, layer.filter_cols, stride);
    return out;
}

int pool_output_size(int input, int size, int stride) {
    if (size < 1 || stride < 1) throw InvalidArgument("max_pool: size and stride must be >= 1");
    if (input <= size) return 1;
    return (input - size + stride - 1) / stride + 1;
}

Volume max_pool(const Volume& volume, int size, int stride) {
    Volume out;
    out.channels = volume.channels;
    out.rows = pool_output_size(volume.rows, size, stride);
    out.cols = pool_output_size(volume.cols, size, stride);
    out.data.resize(out.channels, out.rows * out.cols);
    for (int ch = 0; ch < out.channels; ++ch) {
        for (int r = 0; r < out.rows; ++r) {
            const int r_end = std::min(r * stride + size, volume.rows);
            for (int c = 0; c < out.cols; ++c) {
                const int c_end = std::min(c * stride + size, volume.cols);
                double best = -std::numeric_limits<double>::infinity();
                for (int y = r * stride; y < r_end; ++y)
                    for (int x = c * stride; x < c_end; ++x) best = std::max(best, volume.at(ch, y, x));
                out.at(ch, r, c) = best;
            }
        }
    }
    return out;
}

Matrix correlate_same(const Matrix& image, const Matrix& kernel, Padding padding) {
    if (kernel.rows() % 2 == 0 || kernel.cols() % 2 == 0) {
        throw InvalidArgument("correlate_same: kernel sides must be odd");
    }
    const int hr = static_cast<int>(kernel.rows()) / 2;
    const int hc = static_cast<int>(kernel.cols()) / 2;
    const int rows = static_cast<int>(image.rows());
    const int cols = static_cast<int>(image.cols());
    Matrix out = Matrix::Zero(rows, cols);
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            double sum = 0.0;
            for (int kr = -hr; kr <= hr; ++kr) {
                int y = r + kr;
                if (y < 0 || y >= rows) {
                    if (padding == Padding::zero) continue;
                    y = std::clamp(y, 0, rows - 1);
                }
                for (int kc = -hc; kc <= hc; ++kc) {
                    int x = c + kc;
                    if (x < 0 || x >= cols) {
                        if (padding == Padding::zero) continue;
                        x = std::clamp(x, 0, cols - 1);
                    }
                    sum += kernel(kr + hr, kc + hc) * image(y, x);
                }
            }
            out(r, c) = sum;
        }
    }
    return out;
}

}  // namespace aha::nn
