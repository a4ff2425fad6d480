pub mod cli;
pub mod dfmetrics;
pub mod piecewise;
pub mod rational;
pub mod scrambled;
pub mod symbolic;
pub mod transition;
