//! Aloff–Wallach spaces and the five-block decomposition of g₂.

pub mod aloff_wallach;
pub mod g2;

pub use aloff_wallach::{aloff_wallach, aw_go_classify, aw_metric, aw_obstruction, AloffWallach, AwFormulation};
pub use g2::{g2_decomposition, g2_metric, reproduce_main_theorem, G2Decomposition};
