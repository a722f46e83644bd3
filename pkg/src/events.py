import logging

log = logging.getLogger(__name__)


class EventBus(object):
    subscriptions = dict()

    @staticmethod
    def pub(event, payload):
        callbacks = EventBus.subscriptions.get(event, list())
        for callback in callbacks:
            try:
                callback(event, payload)
            except Exception:
                log.exception("error calling callback %r for event %s and payload %r", callback, event, payload)

    @staticmethod
    def sub(event, callback):
        callbacks = EventBus.subscriptions.get(event, list())
        callbacks.append(callback)
        EventBus.subscriptions[event] = callbacks

    @staticmethod
    def unsub(event, callback):
        EventBus.subscriptions[event] = [x for x in EventBus.subscriptions.get(event, list()) if x is not callback]
