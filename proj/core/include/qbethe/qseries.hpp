#pragma once

// q-integers, q-factorials and q-shifted factorials, computed as direct
// iterated products. Works for real and complex bases.

namespace qbethe {

/// [k]_q = 1 + q + ... + q^{k-1}, with [0]_q = 0.
template <class T>
T q_int(int k, T q) {
    T s{0};
    T p{1};
    for (int i = 0; i < k; ++i) {
        s += p;
        p *= q;
    }
    return s;
}

/// [k]_q! = [k]_q [k-1]_q ... [1]_q, with [0]_q! = 1.
template <class T>
T q_factorial(int k, T q) {
    T r{1};
    for (int i = 1; i <= k; ++i) r *= q_int(i, q);
    return r;
}

/// (z;q)_k = (1-z)(1-zq)...(1-zq^{k-1}), with (z;q)_0 = 1.
template <class T>
T q_pochhammer(T z, T q, int k) {
    T r{1};
    T zq = z;
    for (int i = 0; i < k; ++i) {
        r *= (T{1} - zq);
        zq *= q;
    }
    return r;
}

/// q^k for integer k (k may be negative when q != 0).
template <class T>
T int_pow(T q, int k) {
    bool inv = k < 0;
    if (inv) k = -k;
    T r{1};
    for (int i = 0; i < k; ++i) r *= q;
    return inv ? T{1} / r : r;
}

}  // namespace qbethe
