"""Reference values of K0 and K1 at 50 complex arguments (mpmath, 30 digits)."""
import mpmath as mp

mp.mp.dps = 30
args = []
for k in range(44):
    mod = 10 ** (-2 + 3.6 * k / 43)
    ang = -1.45 + 2.9 * ((k * 0.6180339887498949) % 1.0)
    args.append(mp.mpc(mod * mp.cos(ang), mod * mp.sin(ang)))
# switch points of the implementation's method selection
for w in [1.999, 2.001, 19.99, 20.01, 0.3 + 1.99j, 15 + 12.9j]:
    args.append(mp.mpc(w))

print("# re_w im_w re_k0 im_k0 re_k1 im_k1")
for w in args:
    k0, k1 = mp.besselk(0, w), mp.besselk(1, w)
    print(" ".join(mp.nstr(v, 25, min_fixed=1, max_fixed=0) for v in (w.real, w.imag, k0.real, k0.imag, k1.real, k1.imag)))
