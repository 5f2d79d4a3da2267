pub use std::f64::consts::PI;

/// Catalan's constant `G = sum_{n>=0} (-1)^n / (2n+1)^2`.
pub const CATALAN: f64 = 0.915_965_594_177_219;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constants {
    pub catalan: f64,
    pub euler_gamma: f64,
    pub pi: f64,
}

impl Constants {
    pub const VALUES: Constants = Constants {
        catalan: CATALAN,
        euler_gamma: EULER_GAMMA,
        pi: PI,
    };
}
