pub mod altforms;
pub mod arith;
pub mod cli;
pub mod cubes;
pub mod error;
pub mod linalg;
pub mod localfactors;
pub mod powerseries;
pub mod qforms;
pub mod series;
pub mod verify;
