#include "oddflow/spectral.hpp"

#include <cmath>

#include "oddflow/kernels.hpp"

namespace oddflow {

namespace {

Spectrum laplacian_spectrum(const Spectrum& s) {
  const Grid& g = *s.grid;
  Spectrum out(s.grid);
  const auto kx = g.kx();
  const auto ky = g.ky();
  const std::size_t nx = g.spectral_nx();
  for (std::size_t j = 0; j < g.n(); ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t idx = i + nx * j;
      out.modes[idx] = -(kx[i] * kx[i] + ky[j] * ky[j]) * s.modes[idx];
    }
  }
  return out;
}

ScalarField dealiased_from(ScalarField f) {
  Spectrum s = fft_forward(f);
  kernels::apply_mask(f.grid().dealias_mask(), s.modes);
  return fft_inverse(s);
}

}  // namespace

Spectrum fft_forward(const ScalarField& f) {
  Spectrum s(f.grid_ptr());
  f.grid().forward(f.values(), s.modes);
  return s;
}

ScalarField fft_inverse(const Spectrum& s) {
  ScalarField f(s.grid);
  s.grid->inverse(s.modes, f.values());
  return f;
}

Spectrum derivative(const Spectrum& s, int axis) {
  const Grid& g = *s.grid;
  Spectrum out(s.grid);
  kernels::derivative(s.modes, axis == 0 ? g.kx() : g.ky(), g.spectral_nx(), axis, out.modes);
  return out;
}

ScalarField partial(const ScalarField& f, int axis) { return fft_inverse(derivative(fft_forward(f), axis)); }

ScalarField dealias(const ScalarField& f) { return dealiased_from(f); }

VectorField dealias(const VectorField& v) { return VectorField(dealias(v.x), dealias(v.y)); }

bool is_dealiased(const ScalarField& f, double tol) {
  const Spectrum s = fft_forward(f);
  const double scale = static_cast<double>(f.grid().size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!f.grid().retained(i) && std::abs(s.modes[i]) > tol * scale) return false;
  }
  return true;
}

ScalarField product(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a.grid(), b.grid());
  ScalarField out(a.grid_ptr());
  kernels::multiply(a.values(), b.values(), out.values());
  return dealiased_from(std::move(out));
}

VectorField product(const ScalarField& a, const VectorField& v) { return VectorField(product(a, v.x), product(a, v.y)); }

ScalarField dot(const VectorField& a, const VectorField& b) {
  require_same_grid(a.grid(), b.grid());
  ScalarField out(a.grid_ptr());
  kernels::dot2(a.x.values(), b.x.values(), a.y.values(), b.y.values(), out.values());
  return dealiased_from(std::move(out));
}

ScalarField advect(const VectorField& a, const ScalarField& f) { return dot(a, grad(f)); }

VectorField advect(const VectorField& a, const VectorField& v) {
  const MatrixField gv = jacobian_T(v);
  // component i = a_1 d_1 v_i + a_2 d_2 v_i
  return VectorField(dot(a, VectorField(gv(0, 0), gv(1, 0))), dot(a, VectorField(gv(0, 1), gv(1, 1))));
}

VectorField grad(const ScalarField& f) {
  const Spectrum s = fft_forward(f);
  return VectorField(fft_inverse(derivative(s, 0)), fft_inverse(derivative(s, 1)));
}

VectorField perp_grad(const ScalarField& f) {
  const Spectrum s = fft_forward(f);
  return VectorField(-fft_inverse(derivative(s, 1)), fft_inverse(derivative(s, 0)));
}

ScalarField divergence(const VectorField& v) {
  Spectrum a = derivative(fft_forward(v.x), 0);
  const Spectrum b = derivative(fft_forward(v.y), 1);
  for (std::size_t i = 0; i < a.size(); ++i) a.modes[i] += b.modes[i];
  return fft_inverse(a);
}

ScalarField curl2d(const VectorField& v) {
  Spectrum a = derivative(fft_forward(v.y), 0);
  const Spectrum b = derivative(fft_forward(v.x), 1);
  for (std::size_t i = 0; i < a.size(); ++i) a.modes[i] -= b.modes[i];
  return fft_inverse(a);
}

ScalarField laplacian(const ScalarField& f) { return fft_inverse(laplacian_spectrum(fft_forward(f))); }

ScalarField inverse_laplacian(const ScalarField& f) {
  const Grid& g = f.grid();
  Spectrum s = fft_forward(f);
  const auto kx = g.kx();
  const auto ky = g.ky();
  const std::size_t nx = g.spectral_nx();
  for (std::size_t j = 0; j < g.n(); ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t idx = i + nx * j;
      const double k2 = kx[i] * kx[i] + ky[j] * ky[j];
      s.modes[idx] = k2 > 0.0 ? -s.modes[idx] / k2 : Complex(0.0, 0.0);
    }
  }
  return fft_inverse(s);
}

MatrixField jacobian_T(const VectorField& v) {
  MatrixField m(v.grid_ptr());
  for (int i = 0; i < 2; ++i) {
    const Spectrum s = fft_forward(v[i]);
    for (int j = 0; j < 2; ++j) m(j, i) = fft_inverse(derivative(s, j));
  }
  return m;
}

MatrixField jacobian(const VectorField& v) {
  MatrixField t = jacobian_T(v);
  std::swap(t(0, 1), t(1, 0));
  return t;
}

MatrixField perp_jacobian_T(const VectorField& v) {
  MatrixField m(v.grid_ptr());
  for (int i = 0; i < 2; ++i) {
    const VectorField pg = perp_grad(v[i]);
    m(0, i) = pg.x;
    m(1, i) = pg.y;
  }
  return m;
}

MatrixField hessian(const ScalarField& f) {
  MatrixField m(f.grid_ptr());
  const Spectrum s = fft_forward(f);
  const Spectrum d0 = derivative(s, 0);
  const Spectrum d1 = derivative(s, 1);
  m(0, 0) = fft_inverse(derivative(d0, 0));
  m(0, 1) = fft_inverse(derivative(d0, 1));
  m(1, 0) = m(0, 1);
  m(1, 1) = fft_inverse(derivative(d1, 1));
  return m;
}

VectorField matrix_divergence(const MatrixField& m, const ScalarField& weight) {
  require_same_grid(m.grid(), weight.grid());
  VectorField out(m.grid_ptr());
  for (int i = 0; i < 2; ++i) {
    Spectrum acc(m.grid_ptr());
    for (int j = 0; j < 2; ++j) {
      ScalarField w(m.grid_ptr());
      kernels::multiply(weight.values(), m(j, i).values(), w.values());
      Spectrum s = fft_forward(w);
      kernels::apply_mask(m.grid().dealias_mask(), s.modes);
      const Spectrum d = derivative(s, j);
      for (std::size_t k = 0; k < acc.size(); ++k) acc.modes[k] += d.modes[k];
    }
    out[i] = fft_inverse(acc);
  }
  return out;
}

VectorField matrix_divergence(const MatrixField& m) {
  VectorField out(m.grid_ptr());
  for (int i = 0; i < 2; ++i) {
    Spectrum acc = derivative(fft_forward(m(0, i)), 0);
    const Spectrum d = derivative(fft_forward(m(1, i)), 1);
    for (std::size_t k = 0; k < acc.size(); ++k) acc.modes[k] += d.modes[k];
    out[i] = fft_inverse(acc);
  }
  return out;
}

VectorField leray_project(const VectorField& v) {
  const Grid& g = v.grid();
  Spectrum a = fft_forward(v.x);
  Spectrum b = fft_forward(v.y);
  const auto kx = g.kx();
  const auto ky = g.ky();
  const std::size_t nx = g.spectral_nx();
  for (std::size_t j = 0; j < g.n(); ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t idx = i + nx * j;
      const double k2 = kx[i] * kx[i] + ky[j] * ky[j];
      if (k2 == 0.0) continue;
      // P = I - k k^T / |k|^2 with the same multipliers used for div and grad.
      const Complex kv = (kx[i] * a.modes[idx] + ky[j] * b.modes[idx]) / k2;
      a.modes[idx] -= kx[i] * kv;
      b.modes[idx] -= ky[j] * kv;
    }
  }
  return VectorField(fft_inverse(a), fft_inverse(b));
}

ScalarField double_contraction(const MatrixField& grad_a, const MatrixField& grad_b) {
  ScalarField acc(grad_a.grid_ptr());
  ScalarField term(grad_a.grid_ptr());
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      kernels::multiply(grad_a(i, j).values(), grad_b(j, i).values(), term.values());
      acc += term;
    }
  }
  return dealiased_from(std::move(acc));
}

}  // namespace oddflow
