def emit_line(self, line, mode):
    if not line.leaves:
        return
    before = self.previous_line
    if self.is_pyi:
        before = 0 if before else 1
    else:
        self.current_line.append(line)
        self.total_lines += 1
        self.pending_blank = False
    yield from self.flush(mode)
    self.previous_line = line
    self.previous_defs.clear()
    self.semantic_leading_comment = None
    self.check_trailing_blank(before)
    return self.total_lines
