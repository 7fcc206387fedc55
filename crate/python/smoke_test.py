"""Smoke test for the radtherm extension module.

Build and stage the module first:

    cargo build --release -p radtherm-py --features extension-module
    cp target/release/libradtherm.so python/radtherm.so
    python3 python/smoke_test.py
"""

import math
import os
import sys

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import radtherm  # noqa: E402


def close(a, b, rel):
    return abs(a - b) <= rel * abs(b)


def main():
    disk = radtherm.Target.disk(5e-6, 50e-9)
    assert close(disk.mass, 7.85e-15, 1e-3), disk.mass

    hot = radtherm.Source.blackbody(5000.0)
    r = radtherm.rates(hot, disk)
    days = r["damping_time_2pi"] / 86400.0
    assert close(days, 4.63, 0.02), days
    assert r["equilibrium_temperature"] == 5000.0

    ex = radtherm.exact(hot, disk)
    value, err = ex["damping_rate_z"]
    assert close(value, r["damping_rate"][2], 1e-6), (value, r["damping_rate"][2])

    cav = radtherm.Source.microcavity(
        300.0, 1.45e-6, 1.0, 1.5e-5, mu_ratio=0.92, cutoff_wavelength=588e-9
    )
    rc = radtherm.rates(cav, disk, gain_db=80.0)
    assert rc["equilibrium_temperature"] == 300.0
    assert 0.5 * 150.0 <= rc["damping_time_2pi"] <= 2.0 * 150.0, rc["damping_time_2pi"]

    sphere = radtherm.Target.sphere(100e-9)
    rs = radtherm.rates(cav, sphere, gain_db=70.0, spot_radius=1e-6)
    gx, gy, gz = rs["damping_rate"]
    assert gx == gy == gz

    laser = radtherm.Source.laser(588e-9, 0.2)
    t_laser = radtherm.laser_sphere_temperature(laser)
    assert close(t_laser, 6115.0, 1e-3), t_laser

    gas = radtherm.gas_damping_rate(sphere, 1e-7)
    assert close(gas / (2 * math.pi), 5.81e-7, 0.05), gas

    try:
        radtherm.Target.disk(-1.0, 50e-9)
    except ValueError as e:
        assert "radius" in str(e)
    else:
        raise AssertionError("negative radius accepted")

    g = r["damping_rate"][2] * 1e6
    traj = radtherm.simulate(
        hot, disk, duration=300.0 / g, timestep=0.05 / g, flux_boost=1e6, seed=5,
        trap_frequency=[0.0, 0.0, 20.0], record_stride=4,
    )
    again = radtherm.simulate(
        hot, disk, duration=300.0 / g, timestep=0.05 / g, flux_boost=1e6, seed=5,
        trap_frequency=[0.0, 0.0, 20.0], record_stride=4,
    )
    assert traj.positions == again.positions
    tz, se = traj.temperature()[2]
    assert abs(tz - 5000.0) < 4 * se, (tz, se)
    assert traj.to_csv().splitlines()[6] == "t,x,y,z,vx,vy,vz"

    print("python smoke test passed")


if __name__ == "__main__":
    main()
