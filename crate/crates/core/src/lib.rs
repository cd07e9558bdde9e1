pub mod precision;
pub mod constants;
pub mod termlang;
pub mod pslq;
pub mod hunter;
pub mod cli;
