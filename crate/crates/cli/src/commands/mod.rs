pub mod invariant;
pub mod maslov;
pub mod table;
pub mod verify;
