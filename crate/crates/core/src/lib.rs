pub mod algebra;
pub mod classification;
pub mod cli;
pub mod cohomology;
pub mod divisor;
pub mod frames;
pub mod pages;
