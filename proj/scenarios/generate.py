#!/usr/bin/env python3
"""Regenerates the shipped case-study scenario files.

The scenarios state their own reference profiles and border shapes; the
description fields mark them as reconstructions.
"""
import json
import math
from pathlib import Path

HERE = Path(__file__).parent

PARAMS = {
    "motor_pole_per_s": 25.0,
    "motor_gain_mps2_per_v": 25.0,
    "wheel_separation_m": 0.235,
    "voltage_limit_v": 3.0,
}
TRACKING = {"surface_slope_per_s": 10.0, "sqrt_gain": 2.0, "integral_gain": 0.5}
OBSTACLE_SAFETY = {
    "surface_slope_per_s": 15.0,
    "sqrt_gain": 5.0,
    "integral_gain": 0.5,
    "velocity_gain_per_s": 5.0,
    "steering_gain_per_s": 40.0,
}
BORDER_SAFETY = {
    "surface_slope_per_s": 10.0,
    "sqrt_gain": 8.0,
    "integral_gain": 8.0,
    "velocity_gain_per_s": 3.0,
    "steering_gain_per_s": 40.0,
}
NO_DIST = {"right": {"kind": "none"}, "left": {"kind": "none"}}
VR = 0.5 * math.pi


def robot(name, x, y, theta, v, segments, ref_x, ref_y, ref_theta, safety,
          shadow=False):
    return {
        "name": name,
        "params": PARAMS,
        "initial": {"x_m": x, "y_m": y, "theta_rad": theta, "v_mps": v, "omega_radps": 0.0},
        "reference": {"x_m": ref_x, "y_m": ref_y, "theta_rad": ref_theta, "segments": segments},
        "tracking_gains": TRACKING,
        "safety_gains": safety,
        "shadow_reference_speed": shadow,
        "omega_ref_rate_feedforward": False,
        "disturbance": NO_DIST,
    }


def constant(v, omega, duration):
    return {"kind": "constant", "duration_s": duration, "v_mps": v, "omega_radps": omega}


def rounded_rect(width, height, corner_radius, arc_points=16):
    hw, hh, r = width / 2, height / 2, corner_radius
    cx, cy = hw - r, hh - r
    corners = [(cx, cy, 0.0), (-cx, cy, 0.5 * math.pi), (-cx, -cy, math.pi),
               (cx, -cy, 1.5 * math.pi)]
    vertices = []
    for ccx, ccy, start in corners:
        for k in range(arc_points + 1):
            a = start + 0.5 * math.pi * k / arc_points
            vertices.append([round(ccx + r * math.cos(a), 9), round(ccy + r * math.sin(a), 9)])
    # drop duplicates where arcs meet walls exactly
    out = []
    for v in vertices:
        if not out or (abs(out[-1][0] - v[0]) > 1e-12 or abs(out[-1][1] - v[1]) > 1e-12):
            out.append(v)
    if abs(out[0][0] - out[-1][0]) < 1e-12 and abs(out[0][1] - out[-1][1]) < 1e-12:
        out.pop()
    return out


def case_a():
    # reference circle of radius 1 placed so it cuts 0.2 m deep into both
    # avoidance zones, with the obstacles inside the circle (on the robot's
    # left for the counterclockwise evasion)
    # ||(0,1) - c|| = 0.78 and ||(-1,0) - c|| = 0.76: the reference passes
    # 0.22 m and 0.24 m from the obstacles, inside both safe distances
    c = (-0.29219893271726016, 0.27679893271726014)
    nearest_angle = math.atan2(-0.5 - c[1], 0.0 - c[0])
    start_angle = nearest_angle - math.pi / 3.0  # 60 deg behind the robot
    ref_x = c[0] + math.cos(start_angle)
    ref_y = c[1] + math.sin(start_angle)
    ref_theta = start_angle + 0.5 * math.pi
    theta0 = nearest_angle + 0.5 * math.pi

    return {
        "name": "obstacle_avoidance",
        "description": "Two stationary point obstacles near a circular reference; "
                       "the reference crosses both avoidance zones. Reconstruction: "
                       "the reference circle passes 0.22 m and 0.24 m from the two "
                       "obstacles, inside both safe distances.",
        "dt_s": 1e-3,
        "duration_s": 21.6,
        "seed": 1,
        "robots": [
            robot("robot", 0.0, -0.5, round(theta0, 9), 0.0,
                  [constant(VR, VR, 25.0)],
                  round(ref_x, 9), round(ref_y, 9), round(ref_theta, 9),
                  OBSTACLE_SAFETY)
        ],
        "environment": {
            "features": [
                {"kind": "disc", "name": "obstacle_1", "center_m": [0.0, 1.0], "radius_m": 0.0,
                 "mode": "avoid_outside", "turn": "counterclockwise",
                 "safe_distance_m": 0.35, "band_width_m": 0.07},
                {"kind": "disc", "name": "obstacle_2", "center_m": [-1.0, 0.0], "radius_m": 0.0,
                 "mode": "avoid_outside", "turn": "counterclockwise",
                 "safe_distance_m": 0.25, "band_width_m": 0.05},
            ]
        },
    }


def case_b():
    # two offset circles traversed in opposite senses; the reference paths
    # pass within ~0.3 m of each other, far inside the 0.5 m standoff
    h = 0.24
    vb = 0.4 * math.pi  # slower than the other case studies: the head-on
    # closing rate is what the 0.45 m floor fights
    c_blue = (0.0, h)
    c_green = (-h, 0.0)
    r_blue = math.hypot(1.4 - c_blue[0], 0.0 - c_blue[1])
    r_green = math.hypot(0.0 - c_green[0], -1.4 - c_green[1])
    w_blue = vb / r_blue
    w_green = -vb / r_green

    blue_angle = math.atan2(0.0 - c_blue[1], 1.4 - c_blue[0])
    green_angle = math.atan2(-1.4 - c_green[1], 0.0 - c_green[0])
    blue_theta = blue_angle + 0.5 * math.pi
    green_theta = green_angle - 0.5 * math.pi

    feature = lambda name: {
        "kind": "robot", "name": name + "_body", "robot": name,
        "mode": "avoid_outside", "turn": "counterclockwise",
        "safe_distance_m": 0.5, "band_width_m": 0.1,
    }
    return {
        "name": "colliding_robots",
        "description": "Two robots on nearly coincident circles in opposite "
                       "directions; each treats the other as a moving point "
                       "feature. Reconstruction: circles offset 0.24 m so the "
                       "reference paths still pass far inside the standoff.",
        "dt_s": 1e-3,
        "duration_s": 15.0,
        "seed": 1,
        "robots": [
            robot("blue", 1.4, 0.0, round(blue_theta, 9), 0.0,
                  [constant(round(vb, 9), round(w_blue, 9), 20.0)],
                  1.4, 0.0, round(blue_theta, 9), OBSTACLE_SAFETY),
            robot("green", 0.0, -1.4, round(green_theta, 9), 0.0,
                  [constant(round(vb, 9), round(w_green, 9), 20.0)],
                  0.0, -1.4, round(green_theta, 9), OBSTACLE_SAFETY),
        ],
        "environment": {"features": [feature("blue"), feature("green")]},
    }


def stadium_segments(total_time, lead_in, straight_len, turn_radius):
    """Counterclockwise stadium: straights at heading tau, U-turns of radius
    turn_radius, analytic-rate segments only."""
    segments = [constant(VR, 0.0, lead_in / VR)]
    t = lead_in / VR
    u_turn_t = math.pi * turn_radius / VR
    straight_t = straight_len / VR
    w_turn = VR / turn_radius
    while t < total_time:
        segments.append(constant(VR, round(w_turn, 9), round(u_turn_t, 9)))
        segments.append(constant(VR, 0.0, round(straight_t, 9)))
        t += u_turn_t + straight_t
    return segments


def case_c():
    border = rounded_rect(4.0, 3.0, 1.0)
    # clockwise probe circle: pokes out through the right wall once per lap,
    # sweeps back deep into the interior where the zone releases the robot
    cx, r = 1.3, 0.85
    w = VR / r
    start = (cx - r, 0.0)
    return {
        "name": "geofencing",
        "description": "Keep-inside geofence: the reference is a clockwise "
                       "circle that leaves the border through the right wall "
                       "once per lap; the robot shadows the reference speed "
                       "while the safety control holds the 0.5 m standoff and "
                       "releases when the reference returns inside. "
                       "The border shape and reference are reconstructions.",
        "dt_s": 1e-3,
        "duration_s": 30.0,
        "seed": 1,
        "robots": [
            robot("robot", start[0], start[1], round(-0.5 * math.pi, 9), round(VR, 9),
                  [constant(VR, round(w, 9), 35.0)],
                  start[0], start[1], round(-0.5 * math.pi, 9),
                  BORDER_SAFETY, shadow=True)
        ],
        "environment": {
            "features": [
                {"kind": "polyline", "name": "geofence", "vertices_m": border,
                 "mode": "keep_inside", "turn": "clockwise",
                 "safe_distance_m": 0.5, "band_width_m": 0.1},
            ]
        },
    }


def case_d():
    border = rounded_rect(4.0, 3.0, 1.0)
    # reference circles outside the border so the zone membership never
    # releases; the robot patrols the standoff contour at fixed speed
    ref_r = 3.2
    return {
        "name": "border_patrol",
        "description": "Border patrol at fixed speed 0.5*pi m/s along the "
                       "rounded-rectangle border, standoff 0.5 m. The reference "
                       "circles outside the border to keep the safety mode "
                       "engaged. The border shape is a reconstruction.",
        "dt_s": 1e-3,
        "duration_s": 40.0,
        "seed": 1,
        "robots": [
            robot("robot", 1.5, 0.0, round(0.5 * math.pi, 9), round(VR, 9),
                  [constant(VR, round(VR / ref_r, 9), 45.0)],
                  ref_r, 0.0, round(0.5 * math.pi, 9), BORDER_SAFETY)
        ],
        "environment": {
            "features": [
                {"kind": "polyline", "name": "border", "vertices_m": border,
                 "mode": "keep_inside", "turn": "clockwise",
                 "safe_distance_m": 0.5, "band_width_m": 0.1},
            ]
        },
    }


def main():
    for case in (case_a(), case_b(), case_c(), case_d()):
        path = HERE / f"{case['name']}.json"
        path.write_text(json.dumps(case, indent=2) + "\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
