pub mod coeffring;
pub mod combinat;
pub mod gfseries;
pub mod json;
pub mod lagrange;
pub mod ncsf;
pub mod schroeder;
pub mod verify;
