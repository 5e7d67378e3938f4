#![allow(dead_code)]

pub mod invariant_kernel;
