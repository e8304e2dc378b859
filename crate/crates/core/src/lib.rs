pub mod algebra;
pub mod hamiltonian;
pub mod numerics;
pub mod petrov;
pub mod pfsystem;
pub mod zerocount;
