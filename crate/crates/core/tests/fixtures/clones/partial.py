def summarize(counts):
    total = 0
    shots = 0
    for outcome, n in counts.items():
        sign = 1
        for bit, op in zip(outcome, observable):
            if op == "Z" and bit == "1":
                sign = -sign
        total += sign * n
        shots += n
    print(total, shots)
    return {"total": total, "shots": shots, "ok": shots > 0}
