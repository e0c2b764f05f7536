from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Literal

Status = Literal["PASS", "FAIL", "INFO"]


@dataclass
class Section:
    name: str
    status: Status
    lines: list[str] = field(default_factory=list)


@dataclass
class Report:
    title: str
    sections: list[Section] = field(default_factory=list)

    def add(self, name: str, status: Status, *lines: str) -> Section:
        s = Section(name, status, list(lines))
        self.sections.append(s)
        return s

    @property
    def ok(self) -> bool:
        return all(s.status != "FAIL" for s in self.sections)

    def text(self) -> str:
        out = []
        for s in self.sections:
            out.append(f"== {s.name}: {s.status} ==")
            out.extend("  " + line for line in s.lines)
        return "\n".join(out) + "\n"

    def json(self) -> str:
        data = {
            "title": self.title,
            "status": "PASS" if self.ok else "FAIL",
            "sections": [{"name": s.name, "status": s.status, "lines": s.lines} for s in self.sections],
        }
        return json.dumps(data, indent=2, ensure_ascii=False) + "\n"

    def render(self, fmt: str = "text") -> str:
        return self.json() if fmt == "json" else self.text()
