//! Built-in experiment presets.

/// Linear entropy across the seven-qubit family plus the 130-dimensional
/// member, antiperiodic angles.
pub const FIG3: &str = "\
[experiment]
name = fig3
kind = entropy
ring_size = 1024
t_max = 400
stride = auto
eta = 0.5
kappa = 0.5
coin = plus_i
members = q7n1 q7n2 q7n3 q7n4 q7n5 q7n6 q7n7 g130
window = 50 400
";

/// Saturation level of the regular member versus register size, three
/// initial coins, zero angles.
pub const FIG4: &str = "\
[experiment]
name = fig4-zero
kind = entropy
ring_size = 256
t_max = 96
eta = 0
kappa = 0
coin = zero
members = q3n3 q4n4 q5n5 q6n6 q7n7 q8n8

[experiment]
name = fig4-plus3pi4
kind = entropy
ring_size = 256
t_max = 96
eta = 0
kappa = 0
coin = plus_3pi4
members = q3n3 q4n4 q5n5 q6n6 q7n7 q8n8

[experiment]
name = fig4-plusi
kind = entropy
ring_size = 256
t_max = 96
eta = 0
kappa = 0
coin = plus_i
members = q3n3 q4n4 q5n5 q6n6 q7n7 q8n8
";

/// Standard deviation of the walker for the seven-qubit family.
pub const FIG5: &str = "\
[experiment]
name = fig5
kind = variance
ring_size = 512
t_max = 200
eta = 0.5
kappa = 0.5
coin = plus_i
members = q7n1 q7n2 q7n3 q7n4 q7n5 q7n6 q7n7
window = 100 200
";

/// Late-time slope of the standard deviation versus register size for the
/// fully chaotic and fully regular members.
pub const FIG6: &str = "\
[experiment]
name = fig6
kind = variance
ring_size = 512
t_max = 200
eta = 0
kappa = 0
coin = zero
members = q4n1 q4n4 q5n1 q5n5 q6n1 q6n6 q7n1 q7n7 q8n1 q8n8
window = 100 200
";

/// Phase-space distance to the classical random walk for the seven-qubit
/// family.
pub const FIG7: &str = "\
[experiment]
name = fig7
kind = wigner
ring_size = 64
t_max = 100
eta = 0.5
kappa = 0.5
coin = plus_i
members = q7n1 q7n2 q7n3 q7n4 q7n5 q7n6 q7n7
window = 60 100
";

pub const PRESET_NAMES: [&str; 5] = ["fig3", "fig4", "fig5", "fig6", "fig7"];

pub fn preset_text(name: &str) -> Option<&'static str> {
    match name {
        "fig3" => Some(FIG3),
        "fig4" => Some(FIG4),
        "fig5" => Some(FIG5),
        "fig6" => Some(FIG6),
        "fig7" => Some(FIG7),
        _ => None,
    }
}
