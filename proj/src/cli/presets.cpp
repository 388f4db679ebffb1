#include "diamond/cli/presets.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "diamond/errors.hpp"

namespace diamond::cli {

namespace {

constexpr std::array kPresets{
    Preset{"2", R"json({
  "description": "R at w = omega versus round-trip phase theta, unoptimized parameters",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 300000.0,
      "Q1": 2000,
      "Q2": 1000
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "sweep": {
      "axes": [
        {
          "param": "theta",
          "start": -6.283185307179586,
          "stop": 6.283185307179586,
          "points": 801,
          "scale": "linear"
        }
      ]
    }
  },
  "analysis": {
    "peak": true,
    "symmetry": true
  },
  "checks": [
    {
      "headline": "peak_at_negative",
      "op": "near",
      "target": -3.141592653589793,
      "tolerance": 0.015707963267948967
    },
    {
      "headline": "peak_at_positive",
      "op": "near",
      "target": 3.141592653589793,
      "tolerance": 0.015707963267948967
    },
    {
      "headline": "symmetry_max_abs_diff",
      "op": "le",
      "target": 1e-09
    }
  ]
})json"},
    Preset{"3", R"json({
  "description": "Unoptimized R versus probe detuning",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 300000.0,
      "Q1": 2000,
      "Q2": 1000
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "sweep": {
      "axes": [
        {
          "param": "detuning",
          "start": -1000000.0,
          "stop": 1000000.0,
          "points": 2001,
          "scale": "linear"
        }
      ]
    }
  },
  "analysis": {
    "peak": true
  },
  "checks": [
    {
      "headline": "peak_R_dB_paper",
      "op": "range",
      "lower": 1e-05,
      "upper": 0.0002
    }
  ]
})json"},
    Preset{"3a", R"json({
  "description": "Unoptimized R at w = omega versus parametric rate gamma",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 300000.0,
      "Q1": 2000,
      "Q2": 1000
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "sweep": {
      "axes": [
        {
          "param": "gamma",
          "start": 1000.0,
          "stop": 100000000.0,
          "points": 501,
          "scale": "log"
        }
      ]
    }
  },
  "analysis": {
    "peak": true
  },
  "checks": []
})json"},
    Preset{"4", R"json({
  "description": "R at w = omega over quality factor Q1 and parametric rate gamma, Q2 = 1e4",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 10000000.0,
      "Q1": 51.286,
      "Q2": 10000.0
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "sweep": {
      "axes": [
        {
          "param": "Q1",
          "start": 10,
          "stop": 10000.0,
          "points": 61,
          "scale": "log"
        },
        {
          "param": "gamma",
          "start": 100000.0,
          "stop": 100000000.0,
          "points": 61,
          "scale": "log"
        }
      ]
    }
  },
  "analysis": {
    "peak": true,
    "points": [
      {
        "name": "reference_point",
        "set": {
          "Q1": 51.286,
          "gamma": 10000000.0
        }
      }
    ]
  },
  "checks": [
    {
      "headline": "reference_point_R_linear",
      "op": "rel",
      "target": 3.652,
      "tolerance": 0.05
    }
  ]
})json"},
    Preset{"5", R"json({
  "description": "Optimized R versus probe detuning",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 10000000.0,
      "Q1": 51.286,
      "Q2": 10000.0
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "sweep": {
      "axes": [
        {
          "param": "detuning",
          "start": -1000000.0,
          "stop": 1000000.0,
          "points": 2001,
          "scale": "linear"
        }
      ]
    }
  },
  "analysis": {
    "peak": true,
    "points": [
      {
        "name": "at_w",
        "set": {
          "detuning": 0
        }
      }
    ]
  },
  "checks": [
    {
      "headline": "peak_R_dB_paper",
      "op": "near",
      "target": 12.39,
      "tolerance": 0.5
    },
    {
      "headline": "peak_at",
      "op": "near",
      "target": 53000.0,
      "tolerance": 10000.0
    },
    {
      "headline": "at_w_R_linear",
      "op": "rel",
      "target": 3.652,
      "tolerance": 0.05
    }
  ]
})json"},
    Preset{"6", R"json({
  "description": "Optimized intrinsic forward and backward gains versus probe detuning",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 10000000.0,
      "Q1": 51.286,
      "Q2": 10000.0
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "sweep": {
      "axes": [
        {
          "param": "detuning",
          "start": -1000000.0,
          "stop": 1000000.0,
          "points": 2001,
          "scale": "linear"
        }
      ]
    }
  },
  "analysis": {
    "gains": true
  },
  "checks": [
    {
      "headline": "fwd_peak_dB_paper",
      "op": "le",
      "target": 0.0
    },
    {
      "headline": "bwd_peak_dB_paper",
      "op": "le",
      "target": 0.0
    }
  ]
})json"},
    Preset{"7", R"json({
  "description": "Extrinsic R at w = omega over pump amplitudes a2bar and a4bar",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 10000000.0,
      "Q1": 51.286,
      "Q2": 10000.0
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "extrinsic": true,
    "sweep": {
      "axes": [
        {
          "param": "a2bar_mag",
          "start": 0,
          "stop": 10,
          "points": 41,
          "scale": "linear"
        },
        {
          "param": "a4bar_mag",
          "start": 0,
          "stop": 10,
          "points": 41,
          "scale": "linear"
        }
      ]
    },
    "optimize": {
      "objective": "extrinsic_at_w",
      "grid_points": 41,
      "max_evaluations": 2000,
      "tolerance": 1e-09,
      "free": [
        {
          "param": "a2bar_mag",
          "lower": 0,
          "upper": 10,
          "log": false
        },
        {
          "param": "a4bar_mag",
          "lower": 0,
          "upper": 10,
          "log": false
        }
      ]
    }
  },
  "analysis": {
    "peak": true
  },
  "checks": [
    {
      "headline": "opt_a2bar_mag",
      "op": "rel",
      "target": 2.844,
      "tolerance": 0.05
    },
    {
      "headline": "opt_a4bar_mag",
      "op": "rel",
      "target": 0.4121,
      "tolerance": 0.05
    }
  ]
})json"},
    Preset{"8", R"json({
  "description": "Extrinsic R versus probe detuning at the optimal pumps",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 10000000.0,
      "Q1": 51.286,
      "Q2": 10000.0
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "pumps": {
      "a2bar": 2.844,
      "a4bar": 0.4121
    },
    "extrinsic": true,
    "sweep": {
      "axes": [
        {
          "param": "detuning",
          "start": -1000000.0,
          "stop": 1000000.0,
          "points": 2001,
          "scale": "linear"
        }
      ]
    }
  },
  "analysis": {
    "peak": true
  },
  "checks": [
    {
      "headline": "peak_R_dB_paper",
      "op": "ge",
      "target": 130.0
    }
  ]
})json"},
    Preset{"9", R"json({
  "description": "Extrinsic forward and backward gains versus probe detuning at the optimal pumps",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 10000000.0,
      "Q1": 51.286,
      "Q2": 10000.0
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "pumps": {
      "a2bar": 2.844,
      "a4bar": 0.4121
    },
    "extrinsic": true,
    "sweep": {
      "axes": [
        {
          "param": "detuning",
          "start": -1000000.0,
          "stop": 1000000.0,
          "points": 2001,
          "scale": "linear"
        }
      ]
    }
  },
  "analysis": {
    "gains": true,
    "points": [
      {
        "name": "at_w",
        "set": {
          "detuning": 0
        }
      }
    ]
  },
  "checks": []
})json"},
    Preset{"10", R"json({
  "description": "Directional amplifier gains versus probe detuning, a2bar = 0, a4bar = 100",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 10000000.0,
      "Q1": 51.286,
      "Q2": 10000.0
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "pumps": {
      "a2bar": 0,
      "a4bar": 100
    },
    "extrinsic": true,
    "sweep": {
      "axes": [
        {
          "param": "detuning",
          "start": -3000000.0,
          "stop": 3000000.0,
          "points": 6001,
          "scale": "linear"
        }
      ]
    }
  },
  "analysis": {
    "gains": true,
    "window_threshold_db": -3.0
  },
  "checks": [
    {
      "headline": "fwd_peak_dB_paper",
      "op": "near",
      "target": 20.0,
      "tolerance": 2.0
    },
    {
      "headline": "bwd_at_fwd_peak_dB_paper",
      "op": "near",
      "target": -20.0,
      "tolerance": 2.0
    },
    {
      "headline": "isolation_at_fwd_peak_dB_paper",
      "op": "near",
      "target": 40.0,
      "tolerance": 3.0
    },
    {
      "headline": "window_lower_hz",
      "op": "range",
      "lower": -1300000.0,
      "upper": -700000.0
    },
    {
      "headline": "window_upper_hz",
      "op": "range",
      "lower": 700000.0,
      "upper": 1300000.0
    }
  ]
})json"},
    Preset{"11", R"json({
  "description": "Directional amplifier extrinsic R versus probe detuning, a2bar = 0, a4bar = 100",
  "config": {
    "params": {
      "omega_hz": 1000000000.0,
      "Omega_hz": 2000000000.0,
      "g": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "h": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "f": {
        "mag_hz": 10000000.0,
        "phase_rad": 0.7853981633974483
      },
      "k": {
        "mag_hz": 1000000.0,
        "phase_rad": 0.7853981633974483
      },
      "gamma_hz": 10000000.0,
      "Q1": 51.286,
      "Q2": 10000.0
    },
    "convention": "paper",
    "frame": "rotating",
    "db_scale": "paper",
    "pumps": {
      "a2bar": 0,
      "a4bar": 100
    },
    "extrinsic": true,
    "sweep": {
      "axes": [
        {
          "param": "detuning",
          "start": -5000000.0,
          "stop": 5000000.0,
          "points": 5001,
          "scale": "linear"
        }
      ]
    }
  },
  "analysis": {
    "peak": true,
    "sides": true
  },
  "checks": [
    {
      "headline": "blue_min_R_dB_paper",
      "op": "ge",
      "target": 30.0
    },
    {
      "headline": "red_min_R_dB_paper",
      "op": "ge",
      "target": 32.6
    }
  ]
})json"},
};

}  // namespace

std::span<const Preset> presets() { return kPresets; }

const Preset& find_preset(std::string_view id) {
  const auto it = std::find_if(kPresets.begin(), kPresets.end(), [&](const Preset& p) { return p.id == id; });
  if (it == kPresets.end()) throw UnknownFigure("unknown figure '" + std::string(id) + "'");
  return *it;
}

}  // namespace diamond::cli
