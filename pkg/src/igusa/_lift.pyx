# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled lifting kernel for the congruence-counting oracle.

Residues are held in 64-bit integers and multiplied through a 128-bit
intermediate; the caller only dispatches here when the modulus is below
2**62 so that a sum of two residues cannot overflow.
"""
from array import array

from libcpp.vector cimport vector


cdef extern from *:
    """
    static inline long long igusa_mulmod(long long a, long long b, long long m) {
        return (long long)((__int128)a * b % m);
    }
    """
    long long mulmod "igusa_mulmod"(long long a, long long b, long long m) nogil


def lift_level(const long long[:] sols, Py_ssize_t n, const long long[:] coefs,
               const long long[:] exps, const long long[:] owner, Py_ssize_t l,
               long long p, long long prev_mod, long long mod):
    cdef Py_ssize_t nsol = sols.shape[0] // n
    cdef Py_ssize_t nterms = coefs.shape[0]
    cdef Py_ssize_t s, t, j, k
    cdef long long v, e, b, acc
    cdef bint ok
    cdef vector[long long] out
    cdef vector[long long] x, digit, vals, cs
    cdef long long nlift = 1

    x.resize(n)
    digit.resize(n)
    vals.resize(l)
    cs.resize(nterms)

    for j in range(n):
        nlift *= p
    for t in range(nterms):
        cs[t] = ((coefs[t] % mod) + mod) % mod

    with nogil:
        for s in range(nsol):
            for j in range(n):
                digit[j] = 0
            for k in range(nlift):
                for j in range(n):
                    x[j] = sols[s * n + j] + prev_mod * digit[j]
                for j in range(l):
                    vals[j] = 0
                for t in range(nterms):
                    v = cs[t]
                    for j in range(n):
                        e = exps[t * n + j]
                        if e:
                            acc = 1
                            b = x[j] % mod
                            while e:
                                if e & 1:
                                    acc = mulmod(acc, b, mod)
                                b = mulmod(b, b, mod)
                                e >>= 1
                            v = mulmod(v, acc, mod)
                    vals[owner[t]] = (vals[owner[t]] + v) % mod
                ok = True
                for j in range(l):
                    if vals[j] != 0:
                        ok = False
                        break
                if ok:
                    for j in range(n):
                        out.push_back(x[j])
                # odometer over the p**n lift digits
                for j in range(n):
                    digit[j] += 1
                    if digit[j] < p:
                        break
                    digit[j] = 0

    res = array("q")
    res.extend(out)
    return res
