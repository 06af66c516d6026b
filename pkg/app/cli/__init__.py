# CLI 명령 본체 (simulate, operator-check, kernel-check, sweep)
