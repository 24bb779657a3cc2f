//! Instance and plan files, random instance generators, and the Partition
//! reduction generator.

mod file;
mod generate;

pub use file::{
    parse_instance, parse_plan, plan_to_file, serialize_instance, serialize_plan, AgentEntry, Endpoint, InstanceDoc,
    InstanceFile, PlanEntryFile, PlanFile, FORMAT_VERSION,
};
pub use generate::{gen_partition_reduction, gen_random_tree, gen_random_values, PartitionInstance, SupplyMode};
