pub mod arith;
pub mod chainlink;
pub mod dwork;
pub mod locsys;
pub mod tropical;
pub mod floer;
pub mod bps;
pub mod vshs;
pub mod dilog;
pub mod report;
