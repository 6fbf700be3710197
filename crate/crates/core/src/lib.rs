pub mod gf;
pub mod poly;
pub mod analysis;
pub mod symmetry;
pub mod tower;
