#include "conictr/problems.hpp"

#include <cctype>
#include <cmath>
#include <limits>

#include "conictr/errors.hpp"

namespace conictr {

namespace {

void require(bool ok, const char* name, const char* what) {
  if (!ok) throw BadDimension(std::string(name) + ": " + what);
}

// ---- Cube: (x1-1)^2 + sum 100 (x_i - x_{i-1}^3)^2, chained -------------

TestProblem make_cube(std::size_t n) {
  require(n >= 2, "Cube", "n >= 2 required");
  TestProblem p;
  p.objective = [n](const Vector& x) {
    double f = (x[0] - 1.0) * (x[0] - 1.0);
    for (std::size_t i = 1; i < n; ++i) {
      const double r = x[i] - x[i - 1] * x[i - 1] * x[i - 1];
      f += 100.0 * r * r;
    }
    return f;
  };
  p.gradient = [n](const Vector& x) {
    Vector g(n, 0.0);
    g[0] = 2.0 * (x[0] - 1.0);
    for (std::size_t i = 1; i < n; ++i) {
      const double xp = x[i - 1];
      const double r = x[i] - xp * xp * xp;
      g[i] += 200.0 * r;
      g[i - 1] += -600.0 * r * xp * xp;
    }
    return g;
  };
  p.x0.assign(n, 1.0);
  for (std::size_t i = 0; i < n; i += 2) p.x0[i] = -1.2;
  p.f_opt = 0.0;
  return p;
}

// ---- Penalty-I ---------------------------------------------------------

TestProblem make_penalty1(std::size_t n) {
  require(n >= 2, "Penalty-I", "n >= 2 required");
  constexpr double kA = 1e-5;
  TestProblem p;
  p.objective = [n](const Vector& x) {
    double f = 0.0, q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      f += kA * (x[i] - 1.0) * (x[i] - 1.0);
      q += x[i] * x[i];
    }
    const double r = q - 0.25;
    return f + r * r;
  };
  p.gradient = [n](const Vector& x) {
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) q += x[i] * x[i];
    const double r = q - 0.25;
    Vector g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = 2.0 * kA * (x[i] - 1.0) + 4.0 * r * x[i];
    return g;
  };
  p.x0.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.x0[i] = static_cast<double>(i + 1);
  return p;
}

// ---- Beale, tiled pairs ------------------------------------------------

TestProblem make_beale(std::size_t n) {
  require(n >= 2 && n % 2 == 0, "Beale", "even n required");
  static const double c[3] = {1.5, 2.25, 2.625};
  TestProblem p;
  p.objective = [n](const Vector& x) {
    double f = 0.0;
    for (std::size_t j = 0; j < n; j += 2) {
      const double u = x[j], v = x[j + 1];
      double vp = 1.0;
      for (int i = 0; i < 3; ++i) {
        vp *= v;
        const double r = c[i] - u * (1.0 - vp);
        f += r * r;
      }
    }
    return f;
  };
  p.gradient = [n](const Vector& x) {
    Vector g(n, 0.0);
    for (std::size_t j = 0; j < n; j += 2) {
      const double u = x[j], v = x[j + 1];
      double vp = 1.0;
      for (int i = 0; i < 3; ++i) {
        const double vprev = vp;  // v^i before this step = v^(i)
        vp *= v;
        const double r = c[i] - u * (1.0 - vp);
        g[j] += -2.0 * r * (1.0 - vp);
        g[j + 1] += 2.0 * r * u * static_cast<double>(i + 1) * vprev;
      }
    }
    return g;
  };
  p.x0.assign(n, 1.0);
  p.f_opt = 0.0;
  return p;
}

// ---- Conic: ||x - e||^2 / (2 (1 - a^T(x-e))^2), a = 0.1/n * ones -------

TestProblem make_conic(std::size_t n) {
  require(n >= 2, "Conic", "n >= 2 required");
  const double ai = 0.1 / static_cast<double>(n);
  TestProblem p;
  p.objective = [n, ai](const Vector& x) {
    double uu = 0.0, au = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = x[i] - 1.0;
      uu += u * u;
      au += ai * u;
    }
    const double d = 1.0 - au;
    return uu / (2.0 * d * d);
  };
  p.gradient = [n, ai](const Vector& x) {
    double uu = 0.0, au = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double u = x[i] - 1.0;
      uu += u * u;
      au += ai * u;
    }
    const double d = 1.0 - au;
    Vector g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = (x[i] - 1.0) / (d * d) + uu / (d * d * d) * ai;
    return g;
  };
  p.x0.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.x0[i] = static_cast<double>(i + 1) / static_cast<double>(n);
  p.f_opt = 0.0;
  return p;
}

// ---- Extended Powell singular ------------------------------------------

TestProblem make_ext_powell(std::size_t n) {
  require(n >= 4 && n % 4 == 0, "Extended Powell", "n divisible by 4 required");
  TestProblem p;
  p.objective = [n](const Vector& x) {
    double f = 0.0;
    for (std::size_t j = 0; j < n; j += 4) {
      const double a = x[j] + 10.0 * x[j + 1];
      const double b = x[j + 2] - x[j + 3];
      const double c = x[j + 1] - 2.0 * x[j + 2];
      const double d = x[j] - x[j + 3];
      f += a * a + 5.0 * b * b + c * c * c * c + 10.0 * d * d * d * d;
    }
    return f;
  };
  p.gradient = [n](const Vector& x) {
    Vector g(n);
    for (std::size_t j = 0; j < n; j += 4) {
      const double a = x[j] + 10.0 * x[j + 1];
      const double b = x[j + 2] - x[j + 3];
      const double c = x[j + 1] - 2.0 * x[j + 2];
      const double d = x[j] - x[j + 3];
      g[j] = 2.0 * a + 40.0 * d * d * d;
      g[j + 1] = 20.0 * a + 4.0 * c * c * c;
      g[j + 2] = 10.0 * b - 8.0 * c * c * c;
      g[j + 3] = -10.0 * b - 40.0 * d * d * d;
    }
    return g;
  };
  p.x0.resize(n);
  for (std::size_t j = 0; j < n; j += 4) {
    p.x0[j] = 3.0;
    p.x0[j + 1] = -1.0;
    p.x0[j + 2] = 0.0;
    p.x0[j + 3] = 1.0;
  }
  p.f_opt = 0.0;
  return p;
}

// ---- Variably Dimensioned ----------------------------------------------

TestProblem make_vardim(std::size_t n) {
  require(n >= 2, "Variably Dimensioned", "n >= 2 required");
  TestProblem p;
  p.objective = [n](const Vector& x) {
    double f = 0.0, s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double e = x[i] - 1.0;
      f += e * e;
      s += static_cast<double>(i + 1) * e;
    }
    return f + s * s + s * s * s * s;
  };
  p.gradient = [n](const Vector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(i + 1) * (x[i] - 1.0);
    const double c = 2.0 * s + 4.0 * s * s * s;
    Vector g(n);
    for (std::size_t i = 0; i < n; ++i)
      g[i] = 2.0 * (x[i] - 1.0) + c * static_cast<double>(i + 1);
    return g;
  };
  p.x0.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    p.x0[i] = 1.0 - static_cast<double>(i + 1) / static_cast<double>(n);
  p.f_opt = 0.0;
  return p;
}

// ---- Rosenbrock, tiled pairs -------------------------------------------

TestProblem make_rosenbrock(std::size_t n) {
  require(n >= 2 && n % 2 == 0, "Rosenbrock", "even n required");
  TestProblem p;
  p.objective = [n](const Vector& x) {
    double f = 0.0;
    for (std::size_t j = 0; j < n; j += 2) {
      const double r = x[j + 1] - x[j] * x[j];
      const double e = 1.0 - x[j];
      f += 100.0 * r * r + e * e;
    }
    return f;
  };
  p.gradient = [n](const Vector& x) {
    Vector g(n);
    for (std::size_t j = 0; j < n; j += 2) {
      const double r = x[j + 1] - x[j] * x[j];
      g[j] = -400.0 * r * x[j] - 2.0 * (1.0 - x[j]);
      g[j + 1] = 200.0 * r;
    }
    return g;
  };
  // First pair off-optimum, remaining pairs at their block minimizer. The
  // trailing blocks then carry exactly zero gradient, so runs at any n
  // follow the n=2 trajectory; see docs/problems.md.
  p.x0.assign(n, 1.0);
  p.x0[0] = -1.2;
  p.f_opt = 0.0;
  return p;
}

// ---- Extended Trigonometric (rows 8 and 16) ----------------------------

TestProblem make_trig(std::size_t n) {
  require(n >= 2, "Extended Trigonometric", "n >= 2 required");
  TestProblem p;
  p.objective = [n](const Vector& x) {
    double csum = 0.0;
    for (std::size_t j = 0; j < n; ++j) csum += std::cos(x[j]);
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double fi = static_cast<double>(n) - csum +
                        static_cast<double>(i + 1) * (1.0 - std::cos(x[i])) - std::sin(x[i]);
      f += fi * fi;
    }
    return f;
  };
  p.gradient = [n](const Vector& x) {
    double csum = 0.0;
    for (std::size_t j = 0; j < n; ++j) csum += std::cos(x[j]);
    Vector fi(n);
    double fsum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      fi[i] = static_cast<double>(n) - csum + static_cast<double>(i + 1) * (1.0 - std::cos(x[i])) -
              std::sin(x[i]);
      fsum += fi[i];
    }
    Vector g(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double sk = std::sin(x[k]);
      const double ck = std::cos(x[k]);
      g[k] = 2.0 * sk * fsum + 2.0 * fi[k] * (static_cast<double>(k + 1) * sk - ck);
    }
    return g;
  };
  p.x0.assign(n, 1.0 / static_cast<double>(n));
  return p;
}

// ---- Tridiagonal Exponential -------------------------------------------
// sum over i of (exp(x_i - x_{i+1}) - 1)^2 + (x_i + x_{i+1} - 2)^2

TestProblem make_tridiag_exp(std::size_t n) {
  require(n >= 2, "Tridiagonal Exponential", "n >= 2 required");
  TestProblem p;
  p.objective = [n](const Vector& x) {
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double r = std::exp(x[i] - x[i + 1]) - 1.0;
      const double q = x[i] + x[i + 1] - 2.0;
      f += r * r + q * q;
    }
    return f;
  };
  p.gradient = [n](const Vector& x) {
    Vector g(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double e = std::exp(x[i] - x[i + 1]);
      const double r = e - 1.0;
      const double q = x[i] + x[i + 1] - 2.0;
      g[i] += 2.0 * r * e + 2.0 * q;
      g[i + 1] += -2.0 * r * e + 2.0 * q;
    }
    return g;
  };
  p.x0.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.x0[i] = static_cast<double>(i + 1) / static_cast<double>(n);
  p.f_opt = 0.0;
  return p;
}

// ---- Brent: 3 y y'' + (y')^2 = 0, y(0)=0, y(1)=20, discretized ----------

TestProblem make_brent(std::size_t n) {
  require(n >= 2, "Brent", "n >= 2 required");
  TestProblem p;
  const auto residuals = [n](const Vector& x, Vector& r) {
    for (std::size_t i = 0; i < n; ++i) {
      const double xm = i == 0 ? 0.0 : x[i - 1];
      const double xp = i + 1 == n ? 20.0 : x[i + 1];
      const double d = xp - xm;
      r[i] = 3.0 * x[i] * (xp - 2.0 * x[i] + xm) + d * d / 4.0;
    }
  };
  p.objective = [n, residuals](const Vector& x) {
    Vector r(n);
    residuals(x, r);
    double f = 0.0;
    for (double v : r) f += v * v;
    return f;
  };
  p.gradient = [n, residuals](const Vector& x) {
    Vector r(n);
    residuals(x, r);
    Vector g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double xm = i == 0 ? 0.0 : x[i - 1];
      const double xp = i + 1 == n ? 20.0 : x[i + 1];
      const double d = xp - xm;
      g[i] += 2.0 * r[i] * (3.0 * (xp - 2.0 * x[i] + xm) - 6.0 * x[i]);
      if (i > 0) g[i - 1] += 2.0 * r[i] * (3.0 * x[i] - d / 2.0);
      if (i + 1 < n) g[i + 1] += 2.0 * r[i] * (3.0 * x[i] + d / 2.0);
    }
    return g;
  };
  p.x0.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    p.x0[i] = 20.0 * static_cast<double>(i + 1) / static_cast<double>(n + 1);
  p.f_opt = 0.0;
  return p;
}

// ---- Troesch: y'' = lambda sinh(lambda y), y(0)=0, y(1)=1 ---------------

TestProblem make_troesch(std::size_t n) {
  require(n >= 2, "Troesch", "n >= 2 required");
  constexpr double kLambda = 10.0;
  const double h = 1.0 / static_cast<double>(n + 1);
  const double h2l = h * h * kLambda;
  TestProblem p;
  const auto residuals = [n, h2l](const Vector& x, Vector& r) {
    for (std::size_t i = 0; i < n; ++i) {
      const double xm = i == 0 ? 0.0 : x[i - 1];
      const double xp = i + 1 == n ? 1.0 : x[i + 1];
      r[i] = 2.0 * x[i] - xm - xp + h2l * std::sinh(kLambda * x[i]);
    }
  };
  p.objective = [n, residuals](const Vector& x) {
    Vector r(n);
    residuals(x, r);
    double f = 0.0;
    for (double v : r) f += v * v;
    return f;
  };
  p.gradient = [n, h2l, residuals](const Vector& x) {
    Vector r(n);
    residuals(x, r);
    Vector g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] += 2.0 * r[i] * (2.0 + h2l * kLambda * std::cosh(kLambda * x[i]));
      if (i > 0) g[i - 1] += -2.0 * r[i];
      if (i + 1 < n) g[i + 1] += -2.0 * r[i];
    }
    return g;
  };
  p.x0.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.x0[i] = static_cast<double>(i + 1) * h;
  p.f_opt = 0.0;
  return p;
}

// ---- Cragg and Levy, 4-blocks ------------------------------------------

TestProblem make_cragg_levy(std::size_t n) {
  require(n >= 4 && n % 4 == 0, "Cragg and Levy", "n divisible by 4 required");
  TestProblem p;
  p.objective = [n](const Vector& x) {
    double f = 0.0;
    for (std::size_t j = 0; j < n; j += 4) {
      const double a = std::exp(x[j]) - x[j + 1];
      const double b = x[j + 1] - x[j + 2];
      const double t = std::tan(x[j + 2] - x[j + 3]);
      const double e = x[j + 3] - 1.0;
      const double x1p4 = x[j] * x[j] * x[j] * x[j];
      f += a * a * a * a + 100.0 * b * b * b * b * b * b + t * t * t * t + x1p4 * x1p4 + e * e;
    }
    return f;
  };
  p.gradient = [n](const Vector& x) {
    Vector g(n);
    for (std::size_t j = 0; j < n; j += 4) {
      const double ex = std::exp(x[j]);
      const double a = ex - x[j + 1];
      const double b = x[j + 1] - x[j + 2];
      const double w = x[j + 2] - x[j + 3];
      const double t = std::tan(w);
      const double c = std::cos(w);
      const double a3 = a * a * a;
      const double b5 = b * b * b * b * b;
      const double t3s = 4.0 * t * t * t / (c * c);
      const double x7 = x[j] * x[j] * x[j] * x[j] * x[j] * x[j] * x[j];
      g[j] = 4.0 * a3 * ex + 8.0 * x7;
      g[j + 1] = -4.0 * a3 + 600.0 * b5;
      g[j + 2] = -600.0 * b5 + t3s;
      g[j + 3] = -t3s + 2.0 * (x[j + 3] - 1.0);
    }
    return g;
  };
  p.x0.resize(n);
  for (std::size_t j = 0; j < n; j += 4) {
    p.x0[j] = 1.0;
    p.x0[j + 1] = 2.0;
    p.x0[j + 2] = 2.0;
    p.x0[j + 3] = 2.0;
  }
  p.f_opt = 0.0;
  return p;
}

// ---- Broyden Tridiagonal -----------------------------------------------

TestProblem make_broyden(std::size_t n) {
  require(n >= 2, "Broyden Tridiagonal", "n >= 2 required");
  TestProblem p;
  const auto residuals = [n](const Vector& x, Vector& r) {
    for (std::size_t i = 0; i < n; ++i) {
      const double xm = i == 0 ? 0.0 : x[i - 1];
      const double xp = i + 1 == n ? 0.0 : x[i + 1];
      r[i] = (3.0 - 2.0 * x[i]) * x[i] - xm - 2.0 * xp + 1.0;
    }
  };
  p.objective = [n, residuals](const Vector& x) {
    Vector r(n);
    residuals(x, r);
    double f = 0.0;
    for (double v : r) f += v * v;
    return f;
  };
  p.gradient = [n, residuals](const Vector& x) {
    Vector r(n);
    residuals(x, r);
    Vector g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      g[i] += 2.0 * r[i] * (3.0 - 4.0 * x[i]);
      if (i > 0) g[i - 1] += -2.0 * r[i];
      if (i + 1 < n) g[i + 1] += -4.0 * r[i];
    }
    return g;
  };
  p.x0.assign(n, -1.0);
  p.f_opt = 0.0;
  return p;
}

// ---- Brown almost-linear -----------------------------------------------

TestProblem make_brown(std::size_t n) {
  require(n >= 2, "Brown", "n >= 2 required");
  TestProblem p;
  p.objective = [n](const Vector& x) {
    double s = 0.0, prod = 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += x[j];
      prod *= x[j];
    }
    double f = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double fi = x[i] + s - static_cast<double>(n + 1);
      f += fi * fi;
    }
    const double fn = prod - 1.0;
    return f + fn * fn;
  };
  p.gradient = [n](const Vector& x) {
    double s = 0.0;
    std::size_t zeros = 0;
    double prod_nz = 1.0;  // product of nonzero entries
    for (std::size_t j = 0; j < n; ++j) {
      s += x[j];
      if (x[j] == 0.0)
        ++zeros;
      else
        prod_nz *= x[j];
    }
    const double prod = zeros > 0 ? 0.0 : prod_nz;
    double fsum = 0.0;
    Vector fi(n, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      fi[i] = x[i] + s - static_cast<double>(n + 1);
      fsum += fi[i];
    }
    const double fn = prod - 1.0;
    Vector g(n);
    for (std::size_t k = 0; k < n; ++k) {
      double pk;  // product of all entries except k
      if (zeros == 0)
        pk = prod_nz / x[k];
      else if (zeros == 1 && x[k] == 0.0)
        pk = prod_nz;
      else
        pk = 0.0;
      g[k] = 2.0 * fsum + (k + 1 < n ? 2.0 * fi[k] : 0.0) + 2.0 * fn * pk;
    }
    return g;
  };
  p.x0.assign(n, 0.5);
  p.f_opt = 0.0;
  return p;
}

// ---- Discrete Boundary Value -------------------------------------------

TestProblem make_dbv(std::size_t n) {
  require(n >= 2, "Discrete Boundary Value", "n >= 2 required");
  const double h = 1.0 / static_cast<double>(n + 1);
  TestProblem p;
  const auto residuals = [n, h](const Vector& x, Vector& r) {
    for (std::size_t i = 0; i < n; ++i) {
      const double xm = i == 0 ? 0.0 : x[i - 1];
      const double xp = i + 1 == n ? 0.0 : x[i + 1];
      const double t = static_cast<double>(i + 1) * h;
      const double c = x[i] + t + 1.0;
      r[i] = 2.0 * x[i] - xm - xp + h * h * c * c * c / 2.0;
    }
  };
  p.objective = [n, residuals](const Vector& x) {
    Vector r(n);
    residuals(x, r);
    double f = 0.0;
    for (double v : r) f += v * v;
    return f;
  };
  p.gradient = [n, h, residuals](const Vector& x) {
    Vector r(n);
    residuals(x, r);
    Vector g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const double t = static_cast<double>(i + 1) * h;
      const double c = x[i] + t + 1.0;
      g[i] += 2.0 * r[i] * (2.0 + 1.5 * h * h * c * c);
      if (i > 0) g[i - 1] += -2.0 * r[i];
      if (i + 1 < n) g[i + 1] += -2.0 * r[i];
    }
    return g;
  };
  p.x0.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i + 1) * h;
    p.x0[i] = t * (t - 1.0);
  }
  p.f_opt = 0.0;
  return p;
}

std::string normalize(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

struct Entry {
  const char* name;
  TestProblem (*make)(std::size_t);
};

const Entry kCatalogue[] = {
    {"Cube", make_cube},
    {"Penalty-I", make_penalty1},
    {"Beale", make_beale},
    {"Conic", make_conic},
    {"Extended Powell", make_ext_powell},
    {"Variably Dimensioned", make_vardim},
    {"Rosenbrock", make_rosenbrock},
    {"Extended Trigonometric", make_trig},
    {"Tridiagonal Exponential", make_tridiag_exp},
    {"Brent", make_brent},
    {"Troesch", make_troesch},
    {"Cragg and Levy", make_cragg_levy},
    {"Broyden Tridiagonal", make_broyden},
    {"Brown", make_brown},
    {"Discrete Boundary Value", make_dbv},
};

}  // namespace

TestProblem get_problem(const std::string& name, std::size_t n) {
  const std::string key = normalize(name);
  for (const Entry& e : kCatalogue) {
    if (normalize(e.name) == key) {
      TestProblem p = e.make(n);
      p.name = e.name;
      p.n = n;
      return p;
    }
  }
  throw UnknownProblem("unknown problem: " + name);
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const Entry& e : kCatalogue) v.emplace_back(e.name);
    v.emplace_back("Extended Trigonometric");  // row 16 duplicates row 8
    return v;
  }();
  return names;
}

const std::vector<std::pair<std::string, std::size_t>>& small_benchmark_rows() {
  static const std::vector<std::pair<std::string, std::size_t>> rows = {
      {"Cube", 2},
      {"Penalty-I", 2},
      {"Beale", 2},
      {"Conic", 2},
      {"Extended Powell", 4},
      {"Variably Dimensioned", 4},
      {"Rosenbrock", 2},
      {"Extended Trigonometric", 4},
      {"Tridiagonal Exponential", 4},
      {"Brent", 4},
      {"Troesch", 4},
      {"Cragg and Levy", 4},
      {"Broyden Tridiagonal", 4},
      {"Brown", 2},
      {"Discrete Boundary Value", 4},
      {"Extended Trigonometric", 4},
  };
  return rows;
}

const std::vector<std::pair<std::string, std::size_t>>& scaling_benchmark_rows() {
  static const std::vector<std::pair<std::string, std::size_t>> rows = {
      {"Cube", 20},          {"Cube", 200},         {"Cube", 1000},
      {"Penalty-I", 200},    {"Penalty-I", 500},    {"Penalty-I", 1000},
      {"Beale", 2},          {"Beale", 20},         {"Beale", 200},
      {"Beale", 2000},       {"Conic", 20},         {"Conic", 200},
      {"Conic", 2000},       {"Extended Powell", 40},
      {"Extended Powell", 1000},                    {"Extended Powell", 2000},
      {"Variably Dimensioned", 40},                 {"Variably Dimensioned", 400},
      {"Rosenbrock", 20},    {"Rosenbrock", 200},   {"Rosenbrock", 2000},
      {"Extended Trigonometric", 4},                {"Extended Trigonometric", 40},
      {"Tridiagonal Exponential", 40},              {"Tridiagonal Exponential", 400},
      {"Tridiagonal Exponential", 4000},            {"Brent", 4},
      {"Brent", 40},         {"Troesch", 4},        {"Troesch", 40},
      {"Troesch", 500},      {"Cragg and Levy", 4}, {"Cragg and Levy", 40},
      {"Cragg and Levy", 400},                      {"Broyden Tridiagonal", 4},
      {"Broyden Tridiagonal", 40},                  {"Broyden Tridiagonal", 400},
      {"Broyden Tridiagonal", 1000},                {"Brown", 2},
      {"Brown", 20},         {"Brown", 200},        {"Discrete Boundary Value", 4},
      {"Discrete Boundary Value", 400},             {"Discrete Boundary Value", 1000},
      {"Discrete Boundary Value", 4000},            {"Extended Trigonometric", 400},
  };
  return rows;
}

double fd_check(const TestProblem& p, const Vector& x) {
  const Vector g = p.gradient(x);
  const double h0 = std::cbrt(std::numeric_limits<double>::epsilon());
  Vector xp = x;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double h = h0 * (1.0 + std::abs(x[i]));
    xp[i] = x[i] + h;
    const double fp = p.objective(xp);
    xp[i] = x[i] - h;
    const double fm = p.objective(xp);
    xp[i] = x[i];
    const double fd = (fp - fm) / (2.0 * h);
    const double err = std::abs(g[i] - fd) / std::max(1.0, std::abs(fd));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace conictr
