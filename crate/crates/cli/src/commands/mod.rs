pub mod discrepancy;
pub mod fit;
pub mod generate;
pub mod spectrum;
pub mod verify;
