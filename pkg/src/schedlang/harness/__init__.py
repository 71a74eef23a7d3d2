"""Scenario replay, transcripts, corpus analysis and the command line."""

from .corpus import analyze_corpus, analyze_texts, report_jsonl
from .fuzz import fuzz_messages
from .runner import Mail, Mailbox, Runner, Transcript, run_interleaved, run_scenario
from .simulate import Message, Outcome, negotiate
from .scenario import AgentSpec, Initiate, Scenario, ScenarioError, Send, load_scenario, parse_scenario

__all__ = [
    "AgentSpec",
    "Initiate",
    "Mail",
    "Mailbox",
    "Message",
    "Outcome",
    "Runner",
    "Scenario",
    "ScenarioError",
    "Send",
    "Transcript",
    "analyze_corpus",
    "analyze_texts",
    "fuzz_messages",
    "load_scenario",
    "negotiate",
    "parse_scenario",
    "report_jsonl",
    "run_interleaved",
    "run_scenario",
]
