#!/usr/bin/env python3
"""Regenerate the frozen reference constants used in the unit tests.

Weierstrass values are computed through mpmath's jtheta at 40 decimal digits,
an implementation independent of the C++ evaluation path. Conventions match
the library: lattice {2m w1 + 2n w3}, w3 flipped internally when
Im(w3/w1) < 0 so the nome satisfies |q| < 1.
"""
import mpmath as mp

mp.mp.dps = 40


def internal(w1, w3):
    w1 = mp.mpmathify(w1)
    w3 = mp.mpmathify(w3)
    w3i = -w3 if mp.im(w3 / w1) < 0 else w3
    return w1, w3i, mp.exp(1j * mp.pi * w3i / w1)


def th(q, v, d=0):
    return mp.jtheta(1, v, q, d)


def eta1(w1, q):
    return -mp.pi ** 2 / (12 * w1) * th(q, 0, 3) / th(q, 0, 1)


def sigma(z, w1, q):
    v = mp.pi * z / (2 * w1)
    return 2 * w1 / mp.pi * mp.exp(eta1(w1, q) * z * z / (2 * w1)) * th(q, v) / th(q, 0, 1)


def zeta(z, w1, q):
    v = mp.pi * z / (2 * w1)
    return eta1(w1, q) * z / w1 + mp.pi / (2 * w1) * th(q, v, 1) / th(q, v)


def wp(z, w1, q):
    v = mp.pi * z / (2 * w1)
    t0, t1, t2 = th(q, v), th(q, v, 1), th(q, v, 2)
    return -eta1(w1, q) / w1 - (mp.pi / (2 * w1)) ** 2 * (t2 * t0 - t1 * t1) / (t0 * t0)


def wpp(z, w1, q):
    v = mp.pi * z / (2 * w1)
    t0, t1, t2, t3 = th(q, v), th(q, v, 1), th(q, v, 2), th(q, v, 3)
    return -(mp.pi / (2 * w1)) ** 3 * (t3 * t0 ** 2 - 3 * t2 * t1 * t0 + 2 * t1 ** 3) / t0 ** 3


def show(name, v):
    v = mp.mpc(v)
    print(f"{name:28s} = {mp.nstr(mp.re(v), 20)} {mp.nstr(mp.im(v), 20)}")


def lattice_block(tag, w1v, w3v, points):
    w1, w3i, q = internal(w1v, w3v)
    print(f"--- lattice {tag}: w1={w1v}, w3={w3v} ---")
    show("eta1", eta1(w1, q))
    show("eta3(internal)", zeta(w3i, w1, q))
    show("e1", wp(w1, w1, q))
    show("e2", wp(w1 + w3i, w1, q))
    show("e3", wp(w3i, w1, q))
    for z in points:
        show(f"wp({z})", wp(mp.mpmathify(z), w1, q))
        show(f"wp'({z})", wpp(mp.mpmathify(z), w1, q))
        show(f"zeta({z})", zeta(mp.mpmathify(z), w1, q))
        show(f"sigma({z})", sigma(mp.mpmathify(z), w1, q))
    print()


def background_block(tag, w1v, w3v, kap, rho):
    w1, w3i, q = internal(w1v, w3v)
    kap = mp.mpmathify(kap)
    rho = mp.mpmathify(rho)
    pk, pr = wp(kap, w1, q), wp(rho, w1, q)
    ppk, ppr = wpp(kap, w1, q), wpp(rho, w1, q)
    nu0 = 1j * ppk / (pr - pk)
    es = [wp(w1, w1, q), wp(w1 + w3i, w1, q), wp(w3i, w1, q)]
    nus = [nu0] + [nu0 + 1j * ppk / (pk - e) for e in es]
    nus.sort(key=lambda v: (-mp.re(v), -mp.im(v)))
    s1 = -sum(nus) / 4
    E2 = sum(nus[i] * nus[j] for i in range(4) for j in range(i + 1, 4))
    E3 = sum(nus[i] * nus[j] * nus[k]
             for i in range(4) for j in range(i + 1, 4) for k in range(j + 1, 4))
    C = ppr * ppk / (pr - pk) ** 2
    a4 = (E2 - 4 * s1 ** 2 + 2 * C) / 64
    s2 = (C + s1 ** 2 - 8 * a4) / 4
    s3 = (-4 * s1 ** 3 + 16 * s1 * s2 - 32 * s1 * a4 - E3) / 64
    print(f"--- background {tag}: kappa={kap}, rho={rho} ---")
    show("nu0", nu0)
    for i, n in enumerate(nus):
        show(f"nu[{i}]", n)
    for name, v in [("s1", s1), ("s2", s2), ("s3", s3), ("alpha4", a4), ("C", C)]:
        show(name, v)
    print()
    return w1, q, kap, rho


def node_block(tag, w1, q, kap, rho, z):
    z = mp.mpmathify(z)
    y = 1j / 16 * (wp(z + rho, w1, q) - wp(z + kap, w1, q))
    beta = (kap + rho + 2 * z) * eta1(w1, q) / w1 - zeta(kap + z, w1, q) - zeta(rho + z, w1, q)
    show(f"{tag} y({z})", y)
    show(f"{tag} beta({z})", beta)
    print(f"{tag:12s} v({z}) = {mp.nstr(-16 * mp.re(y) / mp.re(beta), 12)}")


if __name__ == "__main__":
    lattice_block("A (square)", 1, 1j, ["0.3+0.2j"])
    lattice_block("B", "4.61", mp.mpc(0, "-3.14"), ["1.3-0.7j"])
    lattice_block("D (rhombic)", 2, mp.mpc(1, -2), ["0.4+0.3j"])
    w1, q, kap, rho = background_block("fig1", "4.61", mp.mpc(0, "-3.14"),
                                       mp.mpc(0, "1.57"), mp.mpc("4.61", "-1.57"))
    node_block("fig1", w1, q, kap, rho, mp.mpc("2.305", "1.57"))
    w1, q, kap, rho = background_block("fig4/fig5", "3.25", mp.mpc(0, "-3.31"),
                                       mp.mpc(0, "2.08"), mp.mpc("3.25", "-1.73"))
    for z in ["1+1j", "-0.46-2.06j", "-0.65+4.41j"]:
        node_block("fig4/5", w1, q, kap, rho, z)
    w1, q, kap, rho = background_block("fig3", "4.6", mp.mpc(0, "-3.14"),
                                       mp.mpc(0, "1.57"), mp.mpc("4.6", "-1.57"))
    node_block("fig3", w1, q, kap, rho, mp.mpc("-0.51111111111111111111", "-0.3925"))
