pub mod curvature;
pub mod exactnum;
pub mod liealg;
pub mod octonion;
pub mod registry;
pub mod spin;
pub mod topology;
