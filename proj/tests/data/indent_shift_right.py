def render(self, items, out):
    header = self.build_header(items)
    total = 0
    if self.verbose:
        for item in items:
            out.write(item.label)
    self.log_summary(total)
    with self.lock:
        for item in items:
            total += item.size
        if header:
            out.write(header)
            out.write(self.separator)
            out.flush()
    return total
