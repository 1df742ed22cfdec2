pub mod bohemian;
pub mod companion;
pub mod enumerate;
pub mod exactpoly;
pub mod sampler;
pub mod verify;
