#pragma once

#include <mpfr.h>

#include <utility>

namespace ballquad::detail {

// Owning wrapper around mpfr_t. A moved-from Float holds no limbs and may
// only be assigned to or destroyed.
class Float {
 public:
  explicit Float(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Float(mpfr_srcptr x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set(v_, x, MPFR_RNDN);
  }
  Float(const Float& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Float(Float&& other) noexcept : owns_(other.owns_) {
    v_[0] = other.v_[0];
    other.owns_ = false;
  }
  Float& operator=(const Float& other) {
    if (this == &other) return *this;
    if (!owns_) {
      mpfr_init2(v_, mpfr_get_prec(other.v_));
      owns_ = true;
    } else {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
    }
    mpfr_set(v_, other.v_, MPFR_RNDN);
    return *this;
  }
  Float& operator=(Float&& other) noexcept {
    if (this == &other) return *this;
    if (owns_) mpfr_clear(v_);
    v_[0] = other.v_[0];
    owns_ = other.owns_;
    other.owns_ = false;
    return *this;
  }
  ~Float() {
    if (owns_) mpfr_clear(v_);
  }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  // Changes the precision and discards the value.
  void reset(mpfr_prec_t prec) {
    mpfr_set_prec(v_, prec);
    mpfr_set_zero(v_, 1);
  }

 private:
  mpfr_t v_;
  bool owns_ = true;
};

}  // namespace ballquad::detail
