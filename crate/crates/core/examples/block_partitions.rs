//! Counts of ordered block partitions of `{1, ..., s}` by block type.

use ratvis::sullivan::{block_partition_count, partition_types};

fn main() -> ratvis::Result<()> {
    for s in 1..=6 {
        let mut total = 0;
        for t in partition_types(s, s as usize) {
            let n = block_partition_count(&t)?;
            total += n;
            if n > 1 {
                println!("s = {s}, type {:?}: {n}", t.counts);
            }
        }
        println!("s = {s}: {total} in all");
    }
    Ok(())
}
