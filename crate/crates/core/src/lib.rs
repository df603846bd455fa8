//! Soft-decision decoding of binary linear block codes: GRAND list decoding
//! with ORBGRAND query orders, Chase-II, block turbo decoding of product
//! codes, and seeded Monte-Carlo campaigns over BPSK/AWGN.

pub mod bitlinalg;
pub mod channel;
pub mod chase;
pub mod codes;
pub mod grand;
pub mod sim;
pub mod turbo;
