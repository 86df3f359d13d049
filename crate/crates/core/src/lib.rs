pub mod exec;
pub mod orthopoly;
pub mod stieltjes;
pub mod vortex;
pub mod qhj;
pub mod paraxial;
pub mod cli;
