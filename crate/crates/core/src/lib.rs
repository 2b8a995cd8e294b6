#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod aqft;
pub mod cli;
pub mod exactlin;
pub mod fincat;
pub mod fredenhagen;
pub mod gauging;
pub mod grouprep;
pub mod operad;
pub mod random;
