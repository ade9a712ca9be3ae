#pragma once

#include "pmlda/rng.hpp"
#include "pmlda/types.hpp"

namespace pmlda {

struct DirichletParams {
  Vector concentration;  // strictly positive, length K
};

struct IsotropicGaussian {
  Vector mean;
  double variance = 1.0;  // sigma^2 shared across dimensions
};

struct ExponentialParams {
  double rate = 1.0;  // lambda
};

void validate(const DirichletParams& p);
void validate(const IsotropicGaussian& g);
void validate(const ExponentialParams& p);

// log Gamma(x); domain error for x <= 0.
double log_gamma(double x);

// log Dirichlet density at z (open simplex) under p.
double log_dirichlet_pdf(const VectorRef& z, const DirichletParams& p);

// Dirichlet draw. Computed in the log domain so that tiny concentrations
// (e.g. 1e-3) do not underflow to 0/0; output sums to one exactly.
Vector sample_dirichlet(const DirichletParams& p, RngStream& rng);

double log_gaussian_pdf(const VectorRef& x, const IsotropicGaussian& g);

Vector sample_gaussian(const IsotropicGaussian& g, RngStream& rng);

double log_exponential_pdf(double x, const ExponentialParams& p);

// Strictly positive draw with mean 1/rate.
double sample_exponential(const ExponentialParams& p, RngStream& rng);

// Independent-component Gaussian with per-axis variances; used by proposal
// densities where the covariance is a scaled data-covariance diagonal.
double log_diagonal_gaussian_pdf(const VectorRef& x, const VectorRef& mean,
                                 const VectorRef& variance_diagonal);

}  // namespace pmlda
