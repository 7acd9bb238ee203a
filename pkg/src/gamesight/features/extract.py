"""Deterministic extraction of the variable catalog from one session log.

Behavioral fields are computed from events only; questionnaire fields come
from the demographics record when one is supplied and are missing otherwise.
Durations are event-span milliseconds minus paused intervals, divided by
60000; the pause-inclusive total is emitted separately.  Derived ratios use
the zero-denominator convention: value 0 plus a companion ``... Undefined``
flag.
"""
from __future__ import annotations

from collections import Counter, defaultdict

from ..errors import IntegrityError
from ..games.core import GameId
from ..telemetry.events import SessionLog
from .catalog import CATALOG, RATIO_FLAG

PUZZLE_GAMES = (GameId.GROUP_SWAP, GameId.SLIDING_PATH, GameId.GRAPH)

_MS_PER_MINUTE = 60_000.0


def _ratio(values: dict, name: str, numerator: float, denominator: float) -> None:
    if denominator == 0:
        values[name] = 0.0
        values[RATIO_FLAG[name]] = True
    else:
        values[name] = numerator / denominator
        values[RATIO_FLAG[name]] = False


def extract_features(log: SessionLog, demographics: dict | None = None) -> dict:
    """One FeatureVector: every catalog name exactly once, in catalog order."""
    if not log.finalized:
        raise IntegrityError(f"session {log.session_id} is not finalized")
    for i, event in enumerate(log.events):
        if event.seq != i:
            raise IntegrityError(f"session {log.session_id}: seq gap at {i}")

    spans: dict[GameId, list[int]] = {}
    paused: dict[GameId, float] = defaultdict(float)
    pause_started: dict[GameId, int] = {}
    total_paused = 0.0
    counts: Counter = Counter()
    per_game_counts: Counter = Counter()
    shooter = Counter()
    max_score = 0
    challenge_flags = defaultdict(bool)
    guesses = Counter()

    first_ts = log.events[0].timestamp_ms if log.events else 0
    last_ts = log.events[-1].timestamp_ms if log.events else 0

    for ev in log.events:
        g = ev.game_id
        et = ev.event_type
        counts[et] += 1
        per_game_counts[g] += 1
        span = spans.setdefault(g, [ev.timestamp_ms, ev.timestamp_ms])
        span[1] = ev.timestamp_ms

        if et == "pause":
            pause_started[g] = ev.timestamp_ms
        elif et == "resume" and g in pause_started:
            dt = ev.timestamp_ms - pause_started.pop(g)
            paused[g] += dt
            total_paused += dt
        elif et == "guess":
            guesses["total"] += 1
            guesses["correct" if ev.payload.get("correct") else "incorrect"] += 1
        elif et == "win" and g in PUZZLE_GAMES:
            counts["puzzle_win"] += 1

        if g is GameId.SHOOTER:
            if et == "shot":
                shooter["shots"] += 1
            elif et == "spawn":
                kind = ev.payload.get("kind", "")
                if kind.startswith("enemy"):
                    shooter["enemies_generated"] += 1
                elif kind == "asteroid":
                    shooter["asteroids_generated"] += 1
                elif kind == "gold":
                    shooter["gold_generated"] += 1
                elif kind == "power_up":
                    shooter["powerups_generated"] += 1
            elif et == "collision":
                kind = ev.payload.get("kind", "")
                against = ev.payload.get("with", "")
                if kind == "enemy":
                    if against == "player":
                        shooter["enemy_collisions"] += 1
                        shooter["lives_lost"] += 1
                    elif against == "projectile":
                        shooter["enemies_destroyed"] += 1
                elif kind == "asteroid":
                    if against == "player":
                        shooter["asteroid_collisions"] += 1
                        shooter["lives_lost"] += 1
                    elif against == "projectile":
                        shooter["asteroids_destroyed"] += 1
                elif kind == "gold":
                    if against == "projectile":
                        shooter["gold_exploded"] += 1
                    elif against == "bottom":
                        shooter["gold_lost"] += 1
            elif et == "collect":
                if ev.payload.get("kind") == "gold":
                    shooter["gold_collected"] += 1
                else:
                    shooter["powerups_collected"] += 1
            elif et == "move_accepted":
                if ev.payload.get("direction") == "left":
                    shooter["moves_left"] += 1
                else:
                    shooter["moves_right"] += 1
                exit_side = ev.payload.get("boundary_exit")
                if exit_side == "left":
                    shooter["exits_left"] += 1
                elif exit_side == "right":
                    shooter["exits_right"] += 1
            elif et in ("win", "lose"):
                max_score = max(max_score, int(ev.payload.get("score", 0)))
                if et == "win":
                    shooter["wins"] += 1
                for key, value in ev.payload.items():
                    if key.startswith("challenge_") and value:
                        challenge_flags[key] = True
            elif et == "restart":
                shooter["restarts"] += 1

    def minutes(game: GameId) -> float:
        span = spans.get(game)
        if span is None:
            return 0.0
        return max(0.0, (span[1] - span[0]) - paused[game]) / _MS_PER_MINUTE

    total_minutes = max(0.0, (last_ts - first_ts) - total_paused) / _MS_PER_MINUTE
    shooter_minutes = minutes(GameId.SHOOTER)
    shooter_logs = per_game_counts[GameId.SHOOTER]
    menu_navs = counts["menu_nav"]
    quiz_navs = sum(1 for e in log.events
                    if e.event_type == "menu_nav"
                    and e.payload.get("target") == "side_challenges") \
        + counts["side_challenge_attempt"] + counts["side_challenge_solved"]

    skips_by_game = Counter(e.game_id for e in log.events if e.event_type == "skip")
    surrenders_by_game = Counter(e.game_id for e in log.events if e.event_type == "surrender")
    restarts_total = counts["restart"]

    demo = demographics or {}

    def q(name):
        value = demo.get(name, None)
        if value in (None, ""):
            return None
        return value

    values: dict = {}
    values["Unique Gameplay Tracking Code"] = log.tracking_code or q(
        "Unique Gameplay Tracking Code")
    values["Participant Age"] = q("Participant Age")
    values["Participant Gender"] = q("Participant Gender")
    values["Gender Flag: Male"] = q("Gender Flag: Male")
    values["Gender Flag: Female"] = q("Gender Flag: Female")
    values["Computer Engineering Background"] = q("Computer Engineering Background")
    values["MBTI Personality Type"] = q("MBTI Personality Type")
    values["MBTI Extraversion-Introversion"] = q("MBTI Extraversion-Introversion")
    values["MBTI Sensing-Intuition"] = q("MBTI Sensing-Intuition")
    values["MBTI Thinking-Feeling"] = q("MBTI Thinking-Feeling")
    values["MBTI Judging-Perceiving"] = q("MBTI Judging-Perceiving")
    values["MBTI SJ Functional Group"] = q("MBTI SJ Functional Group")
    values["MBTI SP Functional Group"] = q("MBTI SP Functional Group")
    values["MBTI NF Functional Group"] = q("MBTI NF Functional Group")
    values["MBTI NT Functional Group"] = q("MBTI NT Functional Group")
    values["Confirmed Programming Interest"] = q("Confirmed Programming Interest")
    values["Predicted Programming Suitability"] = q("Predicted Programming Suitability")
    values["Help-Seeking Behavior"] = q("Help-Seeking Behavior")
    values["Problem-Solving via Online Search Skill"] = q(
        "Problem-Solving via Online Search Skill")
    values["Time Management Ability"] = q("Time Management Ability")
    values["Competitive Motivation"] = q("Competitive Motivation")
    values["Behavioral Flexibility and Adaptability"] = q(
        "Behavioral Flexibility and Adaptability")
    values["Primary Gaming Platform"] = q("Primary Gaming Platform")
    values["Average Weekly Gameplay Duration"] = q("Average Weekly Gameplay Duration")

    values["Selected Game Difficulty Level"] = log.difficulty
    values["Total Gameplay Log Count"] = len(log.events)
    values["Total Gameplay Duration in Minutes"] = total_minutes
    values["Total Gameplay Pause Count"] = counts["pause"]
    values["Total Game Restart Count"] = restarts_total
    values["Group-Swapping Puzzle Game: Log Count"] = per_game_counts[GameId.GROUP_SWAP]
    values["Group-Swapping Puzzle Game: Gameplay Duration in Minutes"] = minutes(
        GameId.GROUP_SWAP)
    values["Group-Swapping Puzzle Game: Skip Token Usage Count"] = skips_by_game[
        GameId.GROUP_SWAP]
    values["Group-Swapping Puzzle Game: Surrender Action Count"] = surrenders_by_game[
        GameId.GROUP_SWAP]
    values["Obstacle-Rearrangement Path Game: Log Count"] = per_game_counts[
        GameId.SLIDING_PATH]
    values["Obstacle-Rearrangement Path Game: Gameplay Duration in Minutes"] = minutes(
        GameId.SLIDING_PATH)
    values["Memory Matching Game: Log Count"] = per_game_counts[GameId.MEMORY]
    values["Memory Matching Game: Gameplay Duration in Minutes"] = minutes(GameId.MEMORY)
    values["Memory Matching Game: Total Guess Count"] = guesses["total"]
    values["Memory Matching Game: Correct Guess Count"] = guesses["correct"]
    values["Memory Matching Game: Incorrect Guess Count"] = guesses["incorrect"]
    values["Tutorial Engagement Count"] = counts["tutorial_view"]
    values["Tutorial Skipping Count"] = counts["tutorial_skip"]
    values["Quiz Navigation Interaction Count"] = quiz_navs

    values["Galaxy Shooter Game: Gameplay Log Count"] = shooter_logs
    values["Galaxy Shooter Game: Maximum Score Achieved"] = max_score
    values["Galaxy Shooter Game: Total Shots Fired"] = shooter["shots"]
    values["Galaxy Shooter Game: Total Lives Lost"] = shooter["lives_lost"]
    values["Galaxy Shooter Game: Restart Count"] = shooter["restarts"]
    values["Galaxy Shooter Game: Power-Ups Generated"] = shooter["powerups_generated"]
    values["Galaxy Shooter Game: Power-Ups Collected"] = shooter["powerups_collected"]
    values["Galaxy Shooter Game: Gold Generated"] = shooter["gold_generated"]
    values["Galaxy Shooter Game: Gold Collected"] = shooter["gold_collected"]
    values["Galaxy Shooter Game: Gold Lost"] = shooter["gold_lost"]
    values["Galaxy Shooter Game: Gold Exploded"] = shooter["gold_exploded"]
    values["Galaxy Shooter Game: Enemies Generated"] = shooter["enemies_generated"]
    values["Galaxy Shooter Game: Enemies Destroyed by Shooting"] = shooter["enemies_destroyed"]
    values["Galaxy Shooter Game: Enemy Collisions with Player"] = shooter["enemy_collisions"]
    values["Galaxy Shooter Game: Asteroids Generated"] = shooter["asteroids_generated"]
    values["Galaxy Shooter Game: Asteroids Destroyed by Shooting"] = shooter[
        "asteroids_destroyed"]
    values["Galaxy Shooter Game: Asteroid Collisions with Player"] = shooter[
        "asteroid_collisions"]
    values["Galaxy Shooter Game: Leftward Movement Count"] = shooter["moves_left"]
    values["Galaxy Shooter Game: Rightward Movement Count"] = shooter["moves_right"]
    values["Galaxy Shooter Game: Total Horizontal Movement Count"] = (
        shooter["moves_left"] + shooter["moves_right"])
    values["Galaxy Shooter Game: Left Boundary Exit Count"] = shooter["exits_left"]
    values["Galaxy Shooter Game: Right Boundary Exit Count"] = shooter["exits_right"]
    values["Galaxy Shooter Game: Total Boundary Exit Count"] = (
        shooter["exits_left"] + shooter["exits_right"])
    values["Galaxy Shooter Game: Life Survival Challenge Completed"] = challenge_flags[
        "challenge_life_survival"]
    values["Galaxy Shooter Game: Enemy Elimination Challenge Completed"] = challenge_flags[
        "challenge_enemy_elimination"]
    values["Galaxy Shooter Game: Asteroid Destruction Challenge Completed"] = challenge_flags[
        "challenge_asteroid_destruction"]
    values["Galaxy Shooter Game: Gold Collection Challenge Completed"] = challenge_flags[
        "challenge_gold_collection"]
    values["Galaxy Shooter Game: No-Weapon Usage Challenge Completed"] = challenge_flags[
        "challenge_no_weapon"]
    values["Galaxy Shooter Game: Score Achievement Challenge Completed"] = challenge_flags[
        "challenge_score_achievement"]
    values["Graph Traversal Game: Log Count"] = per_game_counts[GameId.GRAPH]
    values["Graph Traversal Game: Gameplay Duration in Minutes"] = minutes(GameId.GRAPH)

    _ratio(values, "Galaxy Shooter Game: Gameplay Logs per Minute",
           shooter_logs, shooter_minutes)
    _ratio(values, "Galaxy Shooter Game: Wins per Minute", shooter["wins"], shooter_minutes)
    _ratio(values, "Galaxy Shooter Game: Shots per Minute", shooter["shots"], shooter_minutes)
    _ratio(values, "Galaxy Shooter Game: Shots per Gameplay Log", shooter["shots"],
           shooter_logs)
    _ratio(values, "Galaxy Shooter Game: Lives Lost per Minute", shooter["lives_lost"],
           shooter_minutes)
    _ratio(values, "Galaxy Shooter Game: Lives Lost per Gameplay Log", shooter["lives_lost"],
           shooter_logs)
    _ratio(values, "Galaxy Shooter Game: Power-Up Collection Efficiency Ratio",
           shooter["powerups_collected"], shooter["powerups_generated"])
    _ratio(values, "Galaxy Shooter Game: Gold Collection Efficiency Ratio",
           shooter["gold_collected"], shooter["gold_generated"])
    _ratio(values, "Galaxy Shooter Game: Enemy Collision Rate",
           shooter["enemy_collisions"], shooter["enemies_generated"])
    _ratio(values, "Galaxy Shooter Game: Asteroid Collision Rate",
           shooter["asteroid_collisions"], shooter["asteroids_generated"])
    _ratio(values, "Galaxy Shooter Game: Directional Movement Bias Ratio",
           shooter["moves_left"], shooter["moves_left"] + shooter["moves_right"])
    _ratio(values, "Galaxy Shooter Game: Boundary Exit Bias Ratio",
           shooter["exits_left"], shooter["exits_left"] + shooter["exits_right"])

    values["Galaxy Shooter Game: Gameplay Duration in Minutes"] = shooter_minutes
    values["Total Puzzle Win Count"] = counts["puzzle_win"]
    values["Total Side Challenge Attempt Count"] = counts["side_challenge_attempt"]
    values["Total Side Challenge Completion Count"] = counts["side_challenge_solved"]
    values["Total Menu Navigation Count"] = menu_navs
    values["Total Surrender Action Count"] = counts["surrender"]
    values["Total Skip Token Usage Count"] = counts["skip"]
    values["Total Gameplay Duration Including Pauses in Minutes"] = (
        (last_ts - first_ts) / _MS_PER_MINUTE)

    ordered = {v.name: values[v.name] for v in CATALOG}
    return ordered
