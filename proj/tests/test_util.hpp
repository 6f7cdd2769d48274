#pragma once

#include <doctest.h>

#include "bqscat/oracle.hpp"

namespace bqscat::testutil {

inline Complex3x3 mat(std::initializer_list<cplx> entries) {
    Complex3x3 m;
    int i = 0;
    for (cplx v : entries) m.e[i++] = v;
    return m;
}

inline double dist(const Complex3x3& a, const Complex3x3& b) { return max_abs(a - b); }

inline void check_close(cplx got, cplx want, double tol) {
    CHECK(std::abs(got - want) <= tol);
}

/// Shared datasets, built once per test binary.
inline const OracleDataset& wavepacket() {
    static const OracleDataset ds = wavepacket_dataset(WavepacketSpec{});
    return ds;
}

inline const OracleDataset& zeros() {
    static const OracleDataset ds = zero_dataset();
    return ds;
}

} // namespace bqscat::testutil
