//! Built-in scenarios, one or more per worked example. Each carries its
//! expected outcomes, so running them all is a regression suite.

use super::config::ScenarioConfig;
use crate::error::{Error, Result};

pub struct Preset {
    pub name: &'static str,
    pub summary: &'static str,
    json: &'static str,
}

impl Preset {
    pub fn config(&self) -> Result<ScenarioConfig> {
        let mut cfg = ScenarioConfig::from_json(self.json)?;
        cfg.name = self.name.to_string();
        cfg.description = self.summary.to_string();
        Ok(cfg)
    }
}

pub const PRESETS: &[Preset] = &[
    Preset {
        name: "IIA1-rotz",
        summary: "xyz with γ1 = γ2, R polarized along z: rotations about z are symmetries",
        json: r#"{
            "hamiltonian": {"family": "xyz", "gamma": [0.8, 0.8, 1.3]},
            "env_state": {"kind": "bloch", "r": [0.0, 0.0, 0.6]},
            "unitaries": [{"kind": "rot_z", "u": 0.7}, {"kind": "rot_z", "u": 2.1}],
            "templates": ["FORM_A", "FORM_B"],
            "expect": {"symmetries": ["holds", "holds"], "templates_hold": ["FORM_A", "FORM_B"]}
        }"#,
    },
    Preset {
        name: "IIA1-rotz-planar",
        summary: "as IIA1-rotz with γ3 = 0: the Σ1/Σ2 mixing function b vanishes",
        json: r#"{
            "hamiltonian": {"family": "xyz", "gamma": [0.8, 0.8, 0.0]},
            "env_state": {"kind": "bloch", "r": [0.0, 0.0, 0.6]},
            "unitaries": [{"kind": "rot_z", "u": 0.7}],
            "templates": ["FORM_A"],
            "expect": {
                "symmetries": ["holds"],
                "templates_hold": ["FORM_A"],
                "zero_components": [
                    {"observable": "S1", "component": "S2"},
                    {"observable": "S2", "component": "S1"}
                ]
            }
        }"#,
    },
    Preset {
        name: "IIA1-rotz-unpolarized",
        summary: "as IIA1-rotz with a maximally mixed R: b and d vanish and R unitaries are symmetries",
        json: r#"{
            "hamiltonian": {"family": "xyz", "gamma": [0.8, 0.8, 1.3]},
            "env_state": {"kind": "maximally_mixed"},
            "unitaries": [{"kind": "rot_z", "u": 0.7}, {"kind": "env_rotation", "axis": 1, "angle": 1.2}],
            "templates": ["FORM_A"],
            "expect": {
                "symmetries": ["holds", "holds"],
                "templates_hold": ["FORM_A"],
                "zero_components": [
                    {"observable": "S1", "component": "S2"},
                    {"observable": "S2", "component": "S1"},
                    {"observable": "S3", "component": "I"}
                ]
            }
        }"#,
    },
    Preset {
        name: "IIA1-discrete-pi",
        summary: "generic xyz with zero transverse R means: only the u = π rotation survives",
        json: r#"{
            "hamiltonian": {"family": "xyz", "gamma": [0.5, 1.4, -0.9]},
            "env_state": {"kind": "bloch", "r": [0.0, 0.0, 0.7]},
            "unitaries": [{"kind": "rot_z", "u": 3.141592653589793}, {"kind": "rot_z", "u": 0.9}],
            "templates": ["FORM_A", "FORM_B"],
            "expect": {
                "symmetries": ["holds", "broken"],
                "templates_hold": ["FORM_B"],
                "templates_fail": ["FORM_A"]
            }
        }"#,
    },
    Preset {
        name: "IIA1-axis",
        summary: "isotropic xyz with R polarized along a tilted axis: rotations about that axis",
        json: r#"{
            "hamiltonian": {"family": "xyz", "gamma": [1.0, 1.0, 1.0]},
            "env_state": {"kind": "bloch", "r": [0.336, 0.42, 0.448]},
            "unitaries": [{"kind": "rot_axis", "u": 0.9, "axis": [0.48, 0.6, 0.64]}, {"kind": "rot_z", "u": 0.9}],
            "frame_axis": [0.48, 0.6, 0.64],
            "templates": ["FORM_A"],
            "expect": {"symmetries": ["holds", "broken"], "templates_hold": ["FORM_A"]}
        }"#,
    },
    Preset {
        name: "IIA1-isotropic",
        summary: "isotropic xyz with R in the Ξ1 = +1 eigenstate: rotations about x",
        json: r#"{
            "hamiltonian": {"family": "xyz", "gamma": [1.0, 1.0, 1.0]},
            "env_state": {"kind": "pauli_eigenstate", "axis": 1, "sign": 1},
            "unitaries": [{"kind": "rot_axis", "u": 1.1, "axis": [1.0, 0.0, 0.0]}],
            "frame_axis": [1.0, 0.0, 0.0],
            "templates": ["FORM_A"],
            "expect": {"symmetries": ["holds"], "templates_hold": ["FORM_A"]}
        }"#,
    },
    Preset {
        name: "IIA1-rotxy",
        summary: "γ1 = γ2, ⟨Ξ1⟩ = ⟨Ξ2⟩, ⟨Ξ3⟩ = 0: the π rotation about x = y and its six-function form",
        json: r#"{
            "hamiltonian": {"family": "xyz", "gamma": [0.9, 0.9, -1.2]},
            "env_state": {"kind": "bloch", "r": [0.4, 0.4, 0.0]},
            "unitaries": [{"kind": "rot_xy_pi"}],
            "templates": ["FORM_C", "FORM_A"],
            "expect": {"symmetries": ["holds"], "templates_hold": ["FORM_C"], "templates_fail": ["FORM_A"]}
        }"#,
    },
    Preset {
        name: "IIA2-tilted-plus",
        summary: "αΣ1 + γΣ2Ξ2 with Ξ2 = +1: the G rotations are symmetries and G is constant",
        json: r#"{
            "hamiltonian": {"family": "tilted", "alpha": 0.6, "gamma": 1.1},
            "env_state": {"kind": "pauli_eigenstate", "axis": 2, "sign": 1},
            "unitaries": [{"kind": "g_group", "u": 0.8, "alpha": 0.6, "gamma": 1.1}],
            "t_grid": {"t_max": 10.02905557267939, "points": 101},
            "frame_axis": [0.4788521306805732, 0.8778955729143844, 0.0],
            "observables": ["X", "Y", "G"],
            "constant_checks": ["G"],
            "expect": {"symmetries": ["holds"], "constant_checks": ["holds"]}
        }"#,
    },
    Preset {
        name: "IIA2-tilted-minus",
        summary: "αΣ1 + γΣ2Ξ2 with Ξ2 = −1: the symmetry uses G with γ → −γ",
        json: r#"{
            "hamiltonian": {"family": "tilted", "alpha": 0.6, "gamma": 1.1},
            "env_state": {"kind": "pauli_eigenstate", "axis": 2, "sign": -1},
            "unitaries": [
                {"kind": "g_group", "u": 0.8, "alpha": 0.6, "gamma": -1.1},
                {"kind": "g_group", "u": 0.8, "alpha": 0.6, "gamma": 1.1}
            ],
            "t_grid": {"t_max": 10.02905557267939, "points": 101},
            "frame_axis": [0.4788521306805732, -0.8778955729143844, 0.0],
            "observables": ["X", "Y", "G"],
            "constant_checks": ["G"],
            "expect": {"symmetries": ["holds", "broken"], "constant_checks": ["holds"]}
        }"#,
    },
    Preset {
        name: "IIB-spin-star-2",
        summary: "central qubit and two bath qubits, bath maximally mixed",
        json: r#"{
            "hamiltonian": {"family": "spin_star", "omega": 1.1, "k": 2},
            "env_state": {"kind": "maximally_mixed"},
            "unitaries": [{"kind": "rot_z", "u": 2.3}],
            "templates": ["FORM_A"],
            "expect": {"symmetries": ["holds"], "templates_hold": ["FORM_A"]}
        }"#,
    },
    Preset {
        name: "IIB-spin-star-3",
        summary: "central qubit and three bath qubits, bath maximally mixed",
        json: r#"{
            "hamiltonian": {"family": "spin_star", "omega": 0.7, "k": 3},
            "env_state": {"kind": "maximally_mixed"},
            "unitaries": [{"kind": "rot_z", "u": 0.9}, {"kind": "env_rotation", "axis": 2, "angle": 0.5}],
            "templates": ["FORM_A"],
            "expect": {
                "symmetries": ["holds", "holds"],
                "templates_hold": ["FORM_A"],
                "zero_components": [
                    {"observable": "S2", "component": "S1"},
                    {"observable": "S3", "component": "I"}
                ]
            }
        }"#,
    },
    Preset {
        name: "IIC1-beamsplitter",
        summary: "two oscillators, number-conserving coupling, R in a Fock state",
        json: r#"{
            "hamiltonian": {"family": "beamsplitter", "omega": 1.0, "eta": 0.45, "cutoff": 40},
            "env_state": {"kind": "fock", "n": 2},
            "unitaries": [{"kind": "number_phase", "u": 0.8}, {"kind": "parity_pi"}],
            "coeff_levels": 36,
            "templates": ["FORM_OSC_F", "FORM_OSC_FG", "FORM_OSC_FGB"],
            "cutoff_bump": 4,
            "expect": {
                "symmetries": ["holds", "holds"],
                "templates_hold": ["FORM_OSC_F", "FORM_OSC_FG", "FORM_OSC_FGB"],
                "max_leakage": 1e-9
            }
        }"#,
    },
    Preset {
        name: "IIC2-squeezer",
        summary: "two oscillators, two-mode squeezing, R in the vacuum: only parity survives",
        json: r#"{
            "hamiltonian": {"family": "squeezer", "omega": 1.0, "eta": 0.6, "cutoff": 60},
            "env_state": {"kind": "fock", "n": 0},
            "unitaries": [{"kind": "parity_pi"}, {"kind": "number_phase", "u": 0.8}],
            "t_grid": {"t_max": 0.5, "points": 26},
            "s_window": 12,
            "coeff_levels": 12,
            "templates": ["FORM_OSC_F", "FORM_OSC_FG"],
            "cutoff_bump": 10,
            "expect": {
                "symmetries": ["holds", "broken"],
                "templates_hold": ["FORM_OSC_FG"],
                "templates_fail": ["FORM_OSC_F"],
                "max_leakage": 1e-6
            }
        }"#,
    },
    Preset {
        name: "IIC3-coherent-nonzero-b",
        summary: "beamsplitter with R coherent: ⟨B⟩ ≠ 0 adds a scalar term and breaks both symmetries",
        json: r#"{
            "hamiltonian": {"family": "beamsplitter", "omega": 1.0, "eta": 0.45, "cutoff": 40},
            "env_state": {"kind": "coherent_truncated", "alpha": [1.0, 0.0]},
            "unitaries": [{"kind": "number_phase", "u": 0.8}, {"kind": "parity_pi"}],
            "coeff_levels": 20,
            "templates": ["FORM_OSC_F", "FORM_OSC_FG", "FORM_OSC_FGB"],
            "expect": {
                "symmetries": ["broken", "broken"],
                "templates_hold": ["FORM_OSC_FGB"],
                "templates_fail": ["FORM_OSC_F", "FORM_OSC_FG"]
            }
        }"#,
    },
    Preset {
        name: "IID-jc-0",
        summary: "qubit and oscillator, oscillator in the vacuum; adjudicates the Σ3 constancy claim",
        json: r#"{
            "hamiltonian": {"family": "jaynes_cummings", "omega": 1.0, "cutoff": 40},
            "env_state": {"kind": "fock", "n": 0},
            "observables": ["S1", "S2", "S3"],
            "unitaries": [{"kind": "rot_z", "u": 0.9}],
            "templates": ["FORM_A"],
            "claims": [{"observable": "S3", "constant": true, "source": "qubit-oscillator section"}],
            "two_level_oracle": true,
            "cutoff_bump": 4,
            "expect": {"symmetries": ["holds"], "templates_hold": ["FORM_A"], "max_leakage": 1e-12}
        }"#,
    },
    Preset {
        name: "IID-jc-1",
        summary: "qubit and oscillator, oscillator in Fock state 1",
        json: r#"{
            "hamiltonian": {"family": "jaynes_cummings", "omega": 1.0, "cutoff": 40},
            "env_state": {"kind": "fock", "n": 1},
            "unitaries": [{"kind": "rot_z", "u": 0.9}],
            "templates": ["FORM_A"],
            "expect": {"symmetries": ["holds"], "templates_hold": ["FORM_A"]}
        }"#,
    },
    Preset {
        name: "IID-jc-2",
        summary: "qubit and oscillator, oscillator in Fock state 2",
        json: r#"{
            "hamiltonian": {"family": "jaynes_cummings", "omega": 1.0, "cutoff": 40},
            "env_state": {"kind": "fock", "n": 2},
            "unitaries": [{"kind": "rot_z", "u": 0.9}],
            "templates": ["FORM_A"],
            "expect": {"symmetries": ["holds"], "templates_hold": ["FORM_A"]}
        }"#,
    },
    Preset {
        name: "IIE-many-osc",
        summary: "qubit and two oscillators, all in the vacuum",
        json: r#"{
            "hamiltonian": {"family": "spin_boson_many", "omega": 0.5, "k": 2, "cutoff": 12},
            "env_state": {"kind": "fock", "n": 0},
            "unitaries": [{"kind": "rot_z", "u": 0.9}],
            "templates": ["FORM_A"],
            "expect": {"symmetries": ["holds"], "templates_hold": ["FORM_A"]}
        }"#,
    },
    Preset {
        name: "IIIA-nothing",
        summary: "isotropic xyz: no traceless observable is constant for any R state",
        json: r#"{
            "hamiltonian": {"family": "xyz", "gamma": [1.0, 1.0, 1.0]},
            "env_state": {"kind": "bloch", "r": [0.3, -0.2, 0.5]},
            "constants_scan": true,
            "expect": {"classification": "none_constant", "not_constant": ["S1", "S2", "S3"]}
        }"#,
    },
    Preset {
        name: "IIIB-everything",
        summary: "ω(Σ2 − Σ2Ξ2) with Ξ2 = +1: every observable is constant",
        json: r#"{
            "hamiltonian": {"family": "decoupler", "omega": 1.0},
            "env_state": {"kind": "pauli_eigenstate", "axis": 2, "sign": 1},
            "constants_scan": true,
            "expect": {"classification": "all_constant"}
        }"#,
    },
    Preset {
        name: "IIIC-generator",
        summary: "tilted Hamiltonian with Ξ2 = +1: the generator G is constant, Σ3 is not",
        json: r#"{
            "hamiltonian": {"family": "tilted", "alpha": 0.6, "gamma": 1.1},
            "env_state": {"kind": "pauli_eigenstate", "axis": 2, "sign": 1},
            "t_grid": {"t_max": 10.02905557267939, "points": 101},
            "constants_scan": true,
            "scan_extra": [{"label": "G", "direction": [0.6, 1.1, 0.0]}],
            "expect": {"classification": "directions", "constant": ["G"], "not_constant": ["S3"]}
        }"#,
    },
];

pub fn list_presets() -> &'static [Preset] {
    PRESETS
}

const ALIASES: &[(&str, &str)] = &[("IIIB-decoupler", "IIIB-everything"), ("IID-jc", "IID-jc-0"), ("IIB-spin-star", "IIB-spin-star-3")];

pub fn preset(name: &str) -> Result<ScenarioConfig> {
    let name = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, n)| *n);
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::Config(format!("unknown preset '{name}'")))?
        .config()
}
