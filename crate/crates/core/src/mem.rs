//! Allocation of the large index arrays. On Linux the backing memory is
//! advised for transparent huge pages before it is first touched; random
//! lookups into arrays of many megabytes otherwise spend most of their time
//! on TLB misses.

pub(crate) fn with_capacity<T>(n: usize) -> Vec<T> {
    let v = Vec::with_capacity(n);
    advise(&v);
    v
}

pub(crate) fn filled<T: Clone>(n: usize, value: T) -> Vec<T> {
    let mut v = with_capacity(n);
    v.resize(n, value);
    v
}

pub(crate) fn collect<T, I: ExactSizeIterator<Item = T>>(items: I) -> Vec<T> {
    let mut v = with_capacity(items.len());
    v.extend(items);
    v
}

#[cfg(target_os = "linux")]
fn advise<T>(v: &Vec<T>) {
    const HUGE: usize = 2 << 20;
    let bytes = v.capacity() * std::mem::size_of::<T>();
    if bytes < 2 * HUGE {
        return;
    }
    let start = v.as_ptr() as usize;
    let lo = start.next_multiple_of(HUGE);
    let hi = (start + bytes) / HUGE * HUGE;
    if hi > lo {
        // only a hint; the call fails harmlessly where THP is unavailable
        unsafe {
            libc::madvise(lo as *mut libc::c_void, hi - lo, libc::MADV_HUGEPAGE);
        }
    }
}

#[cfg(not(target_os = "linux"))]
fn advise<T>(_: &Vec<T>) {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contents_are_unaffected() {
        let v = filled(3 << 20, 7u32);
        assert!(v.len() == 3 << 20 && v.iter().all(|&x| x == 7));
        let w = collect((0..5u32).map(|x| x as u64 * x as u64));
        assert_eq!(w, [0, 1, 4, 9, 16]);
    }
}
