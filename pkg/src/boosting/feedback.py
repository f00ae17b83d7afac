"""
Feedback channels handed to the booster once per round.

A BanditFeedback only answers whether the final prediction was right; it
has no accessor for the label, so a bandit booster cannot read it by
accident. FullInformationFeedback additionally reveals the label and is
required by full-information boosters.
"""

from src.exceptions import FeedbackError


class BanditFeedback:
    __slots__ = ("_label",)

    def __init__(self, true_label: int):
        self._label = int(true_label)

    def is_correct(self, y_tilde: int) -> bool:
        """1(y~ = y)."""
        return int(y_tilde) == self._label

    def is_mistake(self, y_tilde: int) -> bool:
        return not self.is_correct(y_tilde)


class FullInformationFeedback(BanditFeedback):
    __slots__ = ()

    def reveal_label(self) -> int:
        return self._label


def query_correct(channel, y_tilde: int) -> bool:
    """Ask a channel for 1(y~ = y), turning any channel failure into FeedbackError."""
    try:
        return bool(channel.is_correct(y_tilde))
    except FeedbackError:
        raise
    except Exception as e:
        raise FeedbackError(f"feedback channel failed: {e}") from e


def query_label(channel) -> int:
    if not isinstance(channel, FullInformationFeedback):
        raise FeedbackError(
            f"full-information booster needs a FullInformationFeedback, got {type(channel).__name__}")
    try:
        return int(channel.reveal_label())
    except Exception as e:
        raise FeedbackError(f"feedback channel failed: {e}") from e
