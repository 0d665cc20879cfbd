// Copyright (c) 2026 The spvortex developers.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace spv {

//! Invalid user-supplied parameter (out of domain, wrong sign, ...).
class parameter_error : public std::invalid_argument {
public:
  explicit parameter_error(const std::string &what)
      : std::invalid_argument(what) {}
};

//! Physically valid input outside the validity window of an expansion
//! (multipole / quasi-classical expansion breaks down).
class regime_error : public std::domain_error {
public:
  explicit regime_error(const std::string &what) : std::domain_error(what) {}
};

//! Numerical failure at evaluation time (singularity guard, failed
//! bracketing, non-finite intermediate, ...).
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string &what)
      : std::runtime_error(what) {}
};

} // namespace spv
