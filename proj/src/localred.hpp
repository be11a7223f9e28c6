#pragma once

#include <optional>
#include <string>

#include "arith.hpp"
#include "curve.hpp"
#include "qpoly.hpp"

namespace shaq {

enum class KodairaType { good, In, II, III, IV, I0star, Instar, IVstar, IIIstar, IIstar };

std::string kodaira_name(KodairaType t, long n);

struct ReductionData {
    Int p;
    KodairaType type = KodairaType::good;
    long n = 0;       // index for In / In*
    bool split = false; // multiplicative types only
    long c = 1;       // Tamagawa number
    long v_disc_min = 0;
    WeierstrassModel minimal;   // p-minimal model
    ModelChange to_minimal;     // minimal == transform(input, to_minimal)
    long u_exponent = 0;        // v_p(to_minimal.u)

    bool good() const { return type == KodairaType::good; }
    bool multiplicative() const { return type == KodairaType::In; }
    bool additive() const { return !good() && !multiplicative(); }
};

// Tate's algorithm over Q_p for an arbitrary rational model (the model is
// p-integralised first; non-minimal models are rescaled in step 11).
ReductionData tate_algorithm(const WeierstrassModel& m, const Int& p);

// Does the reduction of P hit the identity component of the Neron fiber?
bool kernel_in_identity_component(const WeierstrassModel& m, const CurvePoint& P, const Int& p);

// All kernel points rational over the completion?  kernel_poly is the monic
// x-coordinate polynomial of a prime-degree isogeny kernel; place = nullopt
// means the real place.
bool kernel_is_local_rational(const qp::Poly& kernel_poly, const WeierstrassModel& m,
                              const std::optional<Int>& place);

enum class CokerVerdict { trivial, max_unramified, maximal, undetermined };

const char* verdict_name(CokerVerdict v);

// Classification of coker eta_p for a prime-degree isogeny with Q_p-kernel,
// from the reduction data of both ends, the kernel/identity-component flag,
// and |eta'(0)|_p.
CokerVerdict classify_coker_eta(const ReductionData& rd_dom, const ReductionData& rd_cod,
                                bool kernel_in_E0, long ell, const Int& p,
                                const Rat& eta_prime_norm);

// Key-Lemma combination for a diagonal kernel.
CokerVerdict combine_verdicts(CokerVerdict v1, CokerVerdict v2);

// #H^1(Q_p, Z/ell) = #H^1(Q_p, mu_ell) for prime ell.
Int h1_size(long ell, const Int& p);

} // namespace shaq
