"""Regenerates mountaincar_reference.csv from Gymnasium's MountainCarContinuous-v0.

Gymnasium keeps the state in float32; the module's numpy alias is patched so
the reference dynamics run in float64 and can be compared at 1e-10.

    python3 gen_mountaincar_reference.py > mountaincar_reference.csv
"""

import sys
import warnings
import types

import numpy as np
import gymnasium.envs.classic_control.continuous_mountain_car as mc

N = 10_000
SEED = 20240611


def float64_numpy():
    shim = types.ModuleType("numpy_f64")
    shim.__dict__.update(np.__dict__)

    def array(obj, dtype=None, **kw):
        if dtype is np.float32:
            dtype = np.float64
        return np.array(obj, dtype=dtype, **kw)

    shim.array = array
    return shim


def main():
    warnings.filterwarnings("ignore")
    mc.np = float64_numpy()
    env = mc.Continuous_MountainCarEnv()
    env.reset(seed=0)
    rng = np.random.default_rng(SEED)

    out = sys.stdout
    out.write("x,v,action,next_x,next_v,reward,terminated\n")
    for i in range(N):
        x = rng.uniform(-1.2, 0.6)
        v = rng.uniform(-0.07, 0.07)
        # Mostly in-range actions, some outside [-1, 1] to exercise clamping.
        a = rng.uniform(-1.0, 1.0) if i % 10 else rng.uniform(-3.0, 3.0)
        if i % 97 == 0:
            x, v = -1.2, -abs(v)  # left wall
        if i % 89 == 0:
            x = rng.uniform(0.4, 0.6)  # near the goal
        env.state = np.array([x, v], dtype=np.float64)
        state, reward, terminated, _, _ = env.step(np.array([a], dtype=np.float64))
        assert state.dtype == np.float64
        out.write(
            f"{x!r},{v!r},{a!r},{float(state[0])!r},{float(state[1])!r},"
            f"{float(reward)!r},{int(terminated)}\n"
        )


if __name__ == "__main__":
    main()
